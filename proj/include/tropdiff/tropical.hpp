#ifndef TROPDIFF_TROPICAL_HPP
#define TROPDIFF_TROPICAL_HPP

#include <string>
#include <vector>

#include "tropdiff/rational.hpp"

namespace tropdiff {

// Value in the rank-n min-plus semiring: a vector of n rationals ordered
// lexicographically, or Infinite. Infinite is the additive identity and
// multiplicative absorber; the zero vector is the multiplicative identity.
// rank = 1 gives the usual tropical line, rank = 2 the target of the
// order-2 valuation on power series. Values are immutable.
class TropValue {
public:
    // Infinite element of the given rank.
    explicit TropValue(int rank);
    // Finite element; rank = components.size().
    explicit TropValue(std::vector<Rational> components);
    static TropValue infinite(int rank) { return TropValue(rank); }
    static TropValue zero(int rank) { return TropValue(rank); } // additive identity
    static TropValue one(int rank);                             // multiplicative identity

    int rank() const { return rank_; }
    bool is_infinite() const { return components_.empty(); }
    const std::vector<Rational>& components() const;

    bool operator==(const TropValue& o) const;
    bool operator!=(const TropValue& o) const { return !(*this == o); }

    // Total order: lexicographic with Infinite greatest. This is the order
    // whose minimum realizes tropical addition.
    bool operator<(const TropValue& o) const;

    std::string str() const; // "(1,0)" or "inf"

private:
    int rank_;
    std::vector<Rational> components_; // empty <=> Infinite
};

// a (+) b: lexicographic minimum.
TropValue trop_add(const TropValue& a, const TropValue& b);

// a (.) b: componentwise sum, Infinite absorbing.
TropValue trop_mul(const TropValue& a, const TropValue& b);

// a (.) a (.) ... (.) a, n times; n = 0 gives the multiplicative identity.
TropValue trop_pow(const TropValue& a, unsigned long n);

// A finite (+)-sum vanishes tropically when deleting any single summand
// leaves the sum unchanged: the minimum is Infinite, or it is attained by
// at least two summands. The empty sum vanishes.
bool tropically_vanishes(const std::vector<TropValue>& terms);

// The boolean subsemiring: rank-1 values restricted to {0, Infinite}.
// 0 plays "present", Infinite plays "absent".
bool is_boolean(const TropValue& v);

} // namespace tropdiff

#endif
