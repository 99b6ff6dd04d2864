#include "tropdiff/series.hpp"

#include <algorithm>
#include <numeric>

#include "tropdiff/errors.hpp"

namespace tropdiff {

Exponent Exponent::unit(std::size_t m, std::size_t j) {
    Exponent x = zero(m);
    x[j] = 1;
    return x;
}

std::string Exponent::str() const {
    if (e.size() == 1) return rational_str(e[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += rational_str(e[i]);
    }
    return s + ")";
}

SeriesShape::SeriesShape(std::size_t m_, std::vector<unsigned long> grid_,
                         std::vector<Rational> weight_)
    : m(m_), grid(std::move(grid_)), weight(std::move(weight_)) {
    if (m == 0) throw MismatchError("series need at least one variable");
    if (grid.size() != m || weight.size() != m)
        throw MismatchError("grid/weight length differs from variable count");
    for (auto d : grid)
        if (d == 0) throw MismatchError("grid denominators must be positive");
    for (auto& w : weight) {
        w.canonicalize(); // num/den-pair mpq_class values compare by limbs
        if (w <= 0) throw MismatchError("weights must be positive");
    }
}

Rational SeriesShape::weight_of(const Exponent& x) const {
    return dot(weight, x.e);
}

void SeriesShape::check_exponent(const Exponent& x) const {
    if (x.size() != m) throw MismatchError("exponent length differs from variable count");
    for (std::size_t i = 0; i < m; ++i)
        if (!on_grid(x[i], grid[i]))
            throw OffGridResult("exponent " + x.str() + " off the 1/" +
                                std::to_string(grid[i]) + " grid in variable " + std::to_string(i + 1));
}

SeriesShape SeriesShape::join(const SeriesShape& a, const SeriesShape& b) {
    if (a.m != b.m) throw MismatchError("combining series in different variable counts");
    if (a.weight != b.weight) throw MismatchError("combining series with different weights");
    std::vector<unsigned long> grid(a.m);
    for (std::size_t i = 0; i < a.m; ++i) grid[i] = std::lcm(a.grid[i], b.grid[i]);
    return SeriesShape(a.m, std::move(grid), a.weight);
}

TruncatedSeries::TruncatedSeries(SeriesShape shape, std::map<Exponent, Scalar> entries,
                                 ExtRational bound)
    : shape_(std::move(shape)), entries_(std::move(entries)), bound_(std::move(bound)) {
    normalize();
}

void TruncatedSeries::normalize() {
    for (auto it = entries_.begin(); it != entries_.end();) {
        shape_.check_exponent(it->first);
        if (it->second.is_zero() || (bound_ && !(shape_.weight_of(it->first) < *bound_)))
            it = entries_.erase(it);
        else
            ++it;
    }
}

TruncatedSeries TruncatedSeries::constant(const SeriesShape& shape, const Scalar& c) {
    return monomial(shape, c, Exponent::zero(shape.m));
}

TruncatedSeries TruncatedSeries::monomial(const SeriesShape& shape, const Scalar& c,
                                          const Exponent& e) {
    std::map<Exponent, Scalar> m;
    m.emplace(e, c);
    return TruncatedSeries(shape, std::move(m), std::nullopt);
}

Scalar TruncatedSeries::coeff(const Exponent& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? Scalar() : it->second;
}

ExtRational TruncatedSeries::ord_low() const {
    if (!entries_.empty()) {
        // every stored exponent lies below the bound, so the least stored
        // weight is the least possible weight outright
        ExtRational least;
        for (const auto& [e, c] : entries_)
            least = ext_min(least, shape_.weight_of(e));
        return least;
    }
    if (is_exact()) return std::nullopt;
    // zero below the bound: unknown terms start at the bound, floored at 0
    // to keep the standard product-bound rule on nonnegative bounds
    return *bound_ < 0 ? *bound_ : Rational(0);
}

TruncatedSeries TruncatedSeries::operator-() const {
    return scalar_mul(Scalar(-1));
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    SeriesShape shape = SeriesShape::join(shape_, o.shape_);
    ExtRational bound = ext_min(bound_, o.bound_);
    std::map<Exponent, Scalar> sum = entries_;
    for (const auto& [e, c] : o.entries_) {
        auto [it, fresh] = sum.emplace(e, c);
        if (!fresh) it->second = it->second + c;
    }
    return TruncatedSeries(std::move(shape), std::move(sum), std::move(bound));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + (-o);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    SeriesShape shape = SeriesShape::join(shape_, o.shape_);
    // 0 * anything is exactly 0, even against a truncated factor.
    if (is_exact_zero() || o.is_exact_zero())
        return TruncatedSeries(shape);
    ExtRational bound = ext_min(ext_add(bound_, o.ord_low()), ext_add(o.bound_, ord_low()));
    std::map<Exponent, Scalar> prod;
    for (const auto& [ea, ca] : entries_) {
        for (const auto& [eb, cb] : o.entries_) {
            Exponent e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            Scalar c = ca * cb;
            auto [it, fresh] = prod.emplace(std::move(e), c);
            if (!fresh) it->second = it->second + c;
        }
    }
    return TruncatedSeries(std::move(shape), std::move(prod), std::move(bound));
}

TruncatedSeries TruncatedSeries::scalar_mul(const Scalar& c) const {
    if (c.is_zero()) return TruncatedSeries(shape_);
    std::map<Exponent, Scalar> entries;
    for (const auto& [e, v] : entries_) entries.emplace(e, v * c);
    return TruncatedSeries(shape_, std::move(entries), bound_);
}

TruncatedSeries TruncatedSeries::monomial_mul(const Scalar& c, const Exponent& e) const {
    return *this * monomial(shape_, c, e);
}

TruncatedSeries TruncatedSeries::pow(unsigned long n) const {
    TruncatedSeries acc = constant(shape_, Scalar(1));
    for (unsigned long i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

TruncatedSeries TruncatedSeries::truncated_to(const ExtRational& n) const {
    return TruncatedSeries(shape_, entries_, ext_min(bound_, n));
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return shape_.m == o.shape_.m && shape_.weight == o.shape_.weight &&
           entries_ == o.entries_ && bound_ == o.bound_;
}

std::string TruncatedSeries::str(const std::vector<std::string>& var_names) const {
    if (var_names.size() != shape_.m)
        throw MismatchError("variable name list has wrong length");
    if (entries_.empty()) return "0";
    // Terms ascending by (weight, lex).
    std::vector<const std::pair<const Exponent, Scalar>*> terms;
    for (const auto& kv : entries_) terms.push_back(&kv);
    std::stable_sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
        Rational wa = shape_.weight_of(a->first), wb = shape_.weight_of(b->first);
        if (wa != wb) return wa < wb;
        return a->first < b->first;
    });
    std::string out;
    bool first = true;
    for (auto* kv : terms) {
        std::string mono;
        for (std::size_t i = 0; i < shape_.m; ++i) {
            const Rational& p = kv->first[i];
            if (p == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_names[i];
            if (p != 1) {
                if (is_integer(p) && p > 0) mono += "^" + rational_str(p);
                else mono += "^(" + rational_str(p) + ")";
            }
        }
        Scalar c = kv->second;
        std::string term;
        if (mono.empty()) term = c.str();
        else if (c == Scalar(1)) term = mono;
        else if (c == Scalar(-1)) term = "-" + mono;
        else term = c.str() + "*" + mono;
        if (first) {
            out = term;
            first = false;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

SupportSet::SupportSet(SeriesShape shape, std::set<Exponent> points, ExtRational bound)
    : shape_(std::move(shape)), points_(std::move(points)), bound_(std::move(bound)) {
    normalize();
}

void SupportSet::normalize() {
    for (auto it = points_.begin(); it != points_.end();) {
        shape_.check_exponent(*it);
        if (bound_ && !(shape_.weight_of(*it) < *bound_))
            it = points_.erase(it);
        else
            ++it;
    }
}

SupportSet SupportSet::truncated_to(const ExtRational& n) const {
    return SupportSet(shape_, points_, ext_min(bound_, n));
}

bool SupportSet::operator==(const SupportSet& o) const {
    return shape_.m == o.shape_.m && points_ == o.points_ && bound_ == o.bound_;
}

std::string SupportSet::str() const {
    std::string s = "{";
    bool first = true;
    // Points ascending by (weight, lex), matching series term order.
    std::vector<const Exponent*> pts;
    for (const auto& p : points_) pts.push_back(&p);
    std::stable_sort(pts.begin(), pts.end(), [&](const Exponent* a, const Exponent* b) {
        Rational wa = shape_.weight_of(*a), wb = shape_.weight_of(*b);
        if (wa != wb) return wa < wb;
        return *a < *b;
    });
    for (const auto* p : pts) {
        if (!first) s += ", ";
        s += p->str();
        first = false;
    }
    return s + "}";
}

TropicalSeries::TropicalSeries(SeriesShape shape, std::map<Exponent, Rational> values,
                               ExtRational bound)
    : shape_(std::move(shape)), values_(std::move(values)), bound_(std::move(bound)) {
    for (auto it = values_.begin(); it != values_.end();) {
        shape_.check_exponent(it->first);
        if (bound_ && !(shape_.weight_of(it->first) < *bound_))
            it = values_.erase(it);
        else
            ++it;
    }
}

TruncatedSeries formal_derivative(const TruncatedSeries& a, std::size_t j) {
    const SeriesShape& shape = a.shape();
    if (j >= shape.m) throw MismatchError("derivative variable out of range");
    std::map<Exponent, Scalar> entries;
    for (const auto& [e, c] : a.entries()) {
        if (e[j] == 0) continue; // the factor e_j kills the term
        Exponent d = e;
        d[j] -= 1;
        entries.emplace(std::move(d), c * Scalar(e[j]));
    }
    ExtRational bound = a.bound();
    if (bound) bound = *bound - shape.weight[j];
    return TruncatedSeries(shape, std::move(entries), std::move(bound));
}

SupportSet support_derivative(const SupportSet& a, std::size_t j) {
    const SeriesShape& shape = a.shape();
    if (j >= shape.m) throw MismatchError("derivative variable out of range");
    std::set<Exponent> points;
    for (const auto& e : a.points()) {
        if (e[j] == 0) continue;
        Exponent d = e;
        d[j] -= 1;
        points.insert(std::move(d));
    }
    ExtRational bound = a.bound();
    if (bound) bound = *bound - shape.weight[j];
    return SupportSet(shape, std::move(points), std::move(bound));
}

namespace {

// Minimal entry by (weight, lex); maps iterate in lex order, so the first
// hit among equal weights is the lex-least one.
template <typename Map>
typename Map::const_iterator min_term(const Map& entries, const SeriesShape& shape) {
    auto best = entries.end();
    Rational best_w;
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        Rational w = shape.weight_of(it->first);
        if (best == entries.end() || w < best_w) {
            best = it;
            best_w = w;
        }
    }
    return best;
}

} // namespace

TropValue valuation_v(const TruncatedSeries& a, const CoeffValuation& vk) {
    if (a.entries().empty()) {
        if (a.is_exact()) return TropValue::infinite(2);
        throw IndeterminateBelowBound("series is zero below weight " + ext_str(a.bound()) +
                                      " but not known to be exactly zero");
    }
    auto it = min_term(a.entries(), a.shape());
    return TropValue({a.shape().weight_of(it->first), vk(it->second)});
}

TropicalSeries trop_series(const TruncatedSeries& a, const CoeffValuation& vk) {
    std::map<Exponent, Rational> values;
    for (const auto& [e, c] : a.entries()) values.emplace(e, vk(c));
    return TropicalSeries(a.shape(), std::move(values), a.bound());
}

SupportSet support(const TruncatedSeries& a) {
    std::set<Exponent> points;
    for (const auto& [e, c] : a.entries()) points.insert(e);
    return SupportSet(a.shape(), std::move(points), a.bound());
}

TropValue phi(const SupportSet& b) {
    if (b.points().empty()) {
        if (b.is_exact()) return TropValue::infinite(2);
        throw IndeterminateBelowBound("support is empty below weight " + ext_str(b.bound()) +
                                      " but not known to be exactly empty");
    }
    Rational least;
    bool first = true;
    for (const auto& p : b.points()) {
        Rational w = b.shape().weight_of(p);
        if (first || w < least) {
            least = w;
            first = false;
        }
    }
    return TropValue({least, Rational(0)});
}

TropValue phi(const TropicalSeries& b) {
    if (b.values().empty()) {
        if (b.is_exact()) return TropValue::infinite(2);
        throw IndeterminateBelowBound("tropical series is empty below weight " + ext_str(b.bound()) +
                                      " but not known to be exactly empty");
    }
    auto it = min_term(b.values(), b.shape());
    return TropValue({b.shape().weight_of(it->first), it->second});
}

bool equal_below(const TruncatedSeries& a, const TruncatedSeries& b, const Rational& n) {
    return a.truncated_to(n).entries() == b.truncated_to(n).entries();
}

} // namespace tropdiff
