#include "tropdiff/tropical.hpp"

#include "tropdiff/errors.hpp"

namespace tropdiff {

TropValue::TropValue(int rank) : rank_(rank) {
    if (rank < 1) throw MismatchError("tropical rank must be >= 1");
}

TropValue::TropValue(std::vector<Rational> components)
    : rank_(static_cast<int>(components.size())), components_(std::move(components)) {
    if (rank_ < 1) throw MismatchError("tropical rank must be >= 1");
}

TropValue TropValue::one(int rank) {
    return TropValue(std::vector<Rational>(static_cast<std::size_t>(rank), Rational(0)));
}

const std::vector<Rational>& TropValue::components() const {
    if (is_infinite()) throw Error("Infinite tropical value has no components");
    return components_;
}

bool TropValue::operator==(const TropValue& o) const {
    return rank_ == o.rank_ && components_ == o.components_;
}

bool TropValue::operator<(const TropValue& o) const {
    if (rank_ != o.rank_) throw MismatchError("comparing tropical values of different rank");
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return components_ < o.components_;
}

std::string TropValue::str() const {
    if (is_infinite()) return "inf";
    if (rank_ == 1) return rational_str(components_[0]);
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
        if (i) s += ",";
        s += rational_str(components_[static_cast<std::size_t>(i)]);
    }
    return s + ")";
}

TropValue trop_add(const TropValue& a, const TropValue& b) {
    if (a.rank() != b.rank()) throw MismatchError("tropical addition across ranks");
    return b < a ? b : a;
}

TropValue trop_mul(const TropValue& a, const TropValue& b) {
    if (a.rank() != b.rank()) throw MismatchError("tropical multiplication across ranks");
    if (a.is_infinite() || b.is_infinite()) return TropValue::infinite(a.rank());
    std::vector<Rational> c = a.components();
    const auto& bc = b.components();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += bc[i];
    return TropValue(std::move(c));
}

TropValue trop_pow(const TropValue& a, unsigned long n) {
    if (n == 0) return TropValue::one(a.rank());
    if (a.is_infinite()) return a;
    std::vector<Rational> c = a.components();
    for (auto& x : c) x *= static_cast<long>(n);
    return TropValue(std::move(c));
}

bool tropically_vanishes(const std::vector<TropValue>& terms) {
    if (terms.empty()) return true;
    std::size_t min_count = 0;
    const TropValue* min = nullptr;
    for (const auto& t : terms) {
        if (t.is_infinite()) continue;
        if (!min || t < *min) {
            min = &t;
            min_count = 1;
        } else if (t == *min) {
            ++min_count;
        }
    }
    return min == nullptr || min_count >= 2;
}

bool is_boolean(const TropValue& v) {
    if (v.rank() != 1) return false;
    return v.is_infinite() || v.components()[0] == 0;
}

} // namespace tropdiff
