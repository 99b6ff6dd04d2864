#include "tropdiff/diffpoly.hpp"

#include <algorithm>

#include "tropdiff/errors.hpp"

namespace tropdiff {

unsigned long JetVar::order() const {
    unsigned long s = 0;
    for (auto d : deriv) s += d;
    return s;
}

DiffMonomial DiffMonomial::of(const JetVar& v, unsigned long mult) {
    DiffMonomial m;
    if (mult > 0) m.jets.emplace(v, mult);
    return m;
}

unsigned long DiffMonomial::degree() const {
    unsigned long d = 0;
    for (const auto& [v, k] : jets) d += k;
    return d;
}

DiffMonomial DiffMonomial::times(const DiffMonomial& o) const {
    DiffMonomial r = *this;
    for (const auto& [v, k] : o.jets) r.jets[v] += k;
    return r;
}

DiffMonomial DiffMonomial::divided_by_one(const JetVar& v) const {
    DiffMonomial r = *this;
    auto it = r.jets.find(v);
    if (it == r.jets.end()) throw MismatchError("dividing monomial by absent jet");
    if (--it->second == 0) r.jets.erase(it);
    return r;
}

namespace {
std::vector<JetVar> expanded_desc(const DiffMonomial& m) {
    std::vector<JetVar> out;
    for (const auto& [v, k] : m.jets)
        for (unsigned long i = 0; i < k; ++i) out.push_back(v);
    std::reverse(out.begin(), out.end());
    return out;
}
} // namespace

bool DiffMonomial::operator<(const DiffMonomial& o) const {
    unsigned long da = degree(), db = o.degree();
    if (da != db) return da > db; // higher degree prints first
    std::vector<JetVar> ea = expanded_desc(*this), eb = expanded_desc(o);
    return eb < ea; // higher jets print first
}

DiffPolynomial::DiffPolynomial(std::size_t num_dep, SeriesShape shape,
                               std::map<DiffMonomial, TruncatedSeries> terms)
    : n_(num_dep), shape_(std::move(shape)) {
    for (const auto& [mono, c] : terms) add_term(mono, c);
}

void DiffPolynomial::add_term(const DiffMonomial& mono, const TruncatedSeries& c) {
    for (const auto& [v, k] : mono.jets) {
        if (v.var >= n_) throw MismatchError("jet variable index out of range");
        if (v.deriv.size() != shape_.m)
            throw MismatchError("jet multi-index length differs from variable count");
    }
    shape_ = SeriesShape::join(shape_, c.shape());
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        if (!c.is_exact_zero()) terms_.emplace(mono, c);
        return;
    }
    TruncatedSeries sum = it->second + c;
    if (sum.is_exact_zero()) terms_.erase(it);
    else it->second = std::move(sum);
}

DiffPolynomial DiffPolynomial::from_series(std::size_t num_dep, const TruncatedSeries& c) {
    DiffPolynomial f(num_dep, c.shape());
    f.add_term(DiffMonomial::unit(), c);
    return f;
}

DiffPolynomial DiffPolynomial::from_jet(std::size_t num_dep, const SeriesShape& shape,
                                        const JetVar& v) {
    DiffPolynomial f(num_dep, shape);
    f.add_term(DiffMonomial::of(v), TruncatedSeries::constant(shape, Scalar(1)));
    return f;
}

DiffPolynomial DiffPolynomial::operator-() const {
    return scalar_mul(Scalar(-1));
}

DiffPolynomial DiffPolynomial::operator+(const DiffPolynomial& o) const {
    if (n_ != o.n_) throw MismatchError("adding differential polynomials over different unknowns");
    DiffPolynomial r = *this;
    for (const auto& [mono, c] : o.terms_) r.add_term(mono, c);
    return r;
}

DiffPolynomial DiffPolynomial::operator-(const DiffPolynomial& o) const {
    return *this + (-o);
}

DiffPolynomial DiffPolynomial::operator*(const DiffPolynomial& o) const {
    if (n_ != o.n_) throw MismatchError("multiplying differential polynomials over different unknowns");
    DiffPolynomial r(n_, SeriesShape::join(shape_, o.shape_));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
}

DiffPolynomial DiffPolynomial::pow(unsigned long k) const {
    DiffPolynomial r = from_series(n_, TruncatedSeries::constant(shape_, Scalar(1)));
    for (unsigned long i = 0; i < k; ++i) r = r * *this;
    return r;
}

DiffPolynomial DiffPolynomial::series_mul(const TruncatedSeries& c) const {
    DiffPolynomial r(n_, SeriesShape::join(shape_, c.shape()));
    for (const auto& [mono, a] : terms_) r.add_term(mono, a * c);
    return r;
}

DiffPolynomial DiffPolynomial::scalar_mul(const Scalar& c) const {
    DiffPolynomial r(n_, shape_);
    for (const auto& [mono, a] : terms_) r.add_term(mono, a.scalar_mul(c));
    return r;
}

unsigned long DiffPolynomial::order() const {
    unsigned long d = 0;
    for (const auto& [mono, c] : terms_)
        for (const auto& [v, k] : mono.jets) d = std::max(d, v.order());
    return d;
}

bool DiffPolynomial::operator==(const DiffPolynomial& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
}

DiffPolynomial total_derivative(const DiffPolynomial& f, std::size_t j) {
    if (j >= f.shape().m) throw MismatchError("derivative variable out of range");
    DiffPolynomial r(f.num_dep(), f.shape());
    for (const auto& [mono, c] : f.terms()) {
        r.add_term(mono, formal_derivative(c, j));
        for (const auto& [v, mult] : mono.jets) {
            JetVar adv = v;
            adv.deriv[j] += 1;
            DiffMonomial m = mono.divided_by_one(v).times(DiffMonomial::of(adv));
            r.add_term(m, c.scalar_mul(Scalar(Rational(static_cast<long>(mult)))));
        }
    }
    return r;
}

DiffPolynomial total_derivative_multi(const DiffPolynomial& f,
                                      const std::vector<unsigned long>& alpha) {
    if (alpha.size() != f.shape().m)
        throw MismatchError("derivative multi-index length differs from variable count");
    DiffPolynomial r = f;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        for (unsigned long i = 0; i < alpha[j]; ++i) r = total_derivative(r, j);
    return r;
}

namespace {

// Jet derivatives of one candidate component, filled on demand along the
// first-nonzero-slot path; mixed partials commute so the path is free.
const TruncatedSeries& jet_of(std::map<JetVar, TruncatedSeries>& cache,
                              const std::vector<TruncatedSeries>& phi, const JetVar& v) {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    TruncatedSeries value = [&] {
        if (v.order() == 0) return phi[v.var];
        JetVar below = v;
        std::size_t j = 0;
        while (below.deriv[j] == 0) ++j;
        below.deriv[j] -= 1;
        return formal_derivative(jet_of(cache, phi, below), j);
    }();
    return cache.emplace(v, std::move(value)).first->second;
}

} // namespace

TruncatedSeries substitute(const DiffPolynomial& f, const std::vector<TruncatedSeries>& phi) {
    if (phi.size() != f.num_dep())
        throw MismatchError("candidate has wrong number of components");
    for (const auto& p : phi)
        if (p.num_vars() != f.shape().m)
            throw MismatchError("candidate lives over the wrong independent variables");
    std::map<JetVar, TruncatedSeries> cache;
    SeriesShape shape = f.shape();
    for (const auto& p : phi) shape = SeriesShape::join(shape, p.shape());
    TruncatedSeries acc(shape);
    for (const auto& [mono, c] : f.terms()) {
        TruncatedSeries term = c;
        for (const auto& [v, mult] : mono.jets)
            term = term * jet_of(cache, phi, v).pow(mult);
        acc = acc + term;
    }
    return acc;
}

bool is_solution_mod_bound(const GeneratorSet& gens, const std::vector<TruncatedSeries>& phi,
                           const ExtRational& n) {
    for (const auto& g : gens) {
        TruncatedSeries r = substitute(g, phi).truncated_to(n);
        if (!r.entries().empty()) return false;
        if (r.is_exact()) continue;
        // the residual must be known at least as far as the requested order,
        // and an unrequested check must certify a nonempty range
        bool enough = n ? *r.bound() >= *n : *r.bound() > 0;
        if (!enough)
            throw InsufficientPrecision("residual only known below " + ext_str(r.bound()) +
                                        "; raise the candidate's precision");
    }
    return true;
}

std::string jet_str(const JetVar& v, const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names) {
    const std::string& x = dep_names.at(v.var);
    if (indep_names.size() == 1) {
        std::string s = x;
        for (unsigned long i = 0; i < v.deriv[0]; ++i) s += "'";
        return s;
    }
    if (v.order() == 0) return x;
    std::string s = "D[" + x;
    for (std::size_t j = 0; j < v.deriv.size(); ++j) {
        if (v.deriv[j] == 0) continue;
        s += ";" + indep_names[j];
        if (v.deriv[j] > 1) s += "^" + std::to_string(v.deriv[j]);
    }
    return s + "]";
}

std::string DiffPolynomial::str(const std::vector<std::string>& indep_names,
                                const std::vector<std::string>& dep_names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        std::string mstr;
        for (const auto& [v, mult] : mono.jets) {
            if (!mstr.empty()) mstr += "*";
            mstr += jet_str(v, indep_names, dep_names);
            if (mult > 1) mstr += "^" + std::to_string(mult);
        }
        std::string cstr = c.str(indep_names);
        std::string term;
        if (mstr.empty()) {
            term = cstr;
        } else if (c == TruncatedSeries::constant(c.shape(), Scalar(1)).truncated_to(c.bound())) {
            term = mstr;
        } else if (c == TruncatedSeries::constant(c.shape(), Scalar(-1)).truncated_to(c.bound())) {
            term = "-" + mstr;
        } else if (c.entries().size() > 1) {
            term = "(" + cstr + ")*" + mstr;
        } else {
            term = cstr + "*" + mstr;
        }
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

} // namespace tropdiff
