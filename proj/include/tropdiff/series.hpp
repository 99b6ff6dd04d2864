#ifndef TROPDIFF_SERIES_HPP
#define TROPDIFF_SERIES_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tropdiff/rational.hpp"
#include "tropdiff/scalar.hpp"
#include "tropdiff/tropical.hpp"

namespace tropdiff {

// Exponent vector of a (Laurent/Puiseux) monomial in m independent
// variables. Ordered lexicographically so it can key ordered maps; the
// order relevant to truncation is the weighted one, handled by the series.
struct Exponent {
    std::vector<Rational> e;

    Exponent() = default;
    // Canonicalizes: mpq_class built from a num/den pair compares by limbs,
    // so every entry point must normalize.
    explicit Exponent(std::vector<Rational> v) : e(std::move(v)) {
        for (auto& q : e) q.canonicalize();
    }
    static Exponent zero(std::size_t m) { return Exponent(std::vector<Rational>(m, Rational(0))); }
    static Exponent unit(std::size_t m, std::size_t j);

    std::size_t size() const { return e.size(); }
    const Rational& operator[](std::size_t i) const { return e[i]; }
    Rational& operator[](std::size_t i) { return e[i]; }

    bool operator==(const Exponent& o) const { return e == o.e; }
    bool operator!=(const Exponent& o) const { return e != o.e; }
    bool operator<(const Exponent& o) const { return e < o.e; }

    std::string str() const; // "3", "1/2", or "(0,1/2)" for m >= 2
};

// Shared shape of series-like objects: number of variables, grid
// denominators (exponent i lies in (1/grid[i])*Z) and a positive rational
// weight vector defining the truncation order w.e.
struct SeriesShape {
    std::size_t m = 1;
    std::vector<unsigned long> grid;   // all >= 1
    std::vector<Rational> weight;      // all > 0

    SeriesShape() : grid{1}, weight{Rational(1)} {}
    SeriesShape(std::size_t m_, std::vector<unsigned long> grid_, std::vector<Rational> weight_);
    static SeriesShape univariate() { return SeriesShape(); }

    Rational weight_of(const Exponent& x) const;
    void check_exponent(const Exponent& x) const;
    bool operator==(const SeriesShape& o) const {
        return m == o.m && grid == o.grid && weight == o.weight;
    }
    // Same m and weight; grids joined by componentwise lcm.
    static SeriesShape join(const SeriesShape& a, const SeriesShape& b);
};

// Formal series over the scalar field, exact below a weight bound.
// Canonical form: no zero coefficients, every stored exponent lies on the
// grid and strictly below the bound (w.e < N). bound == nullopt means the
// series is exact (a Laurent/Puiseux polynomial). Immutable value type.
class TruncatedSeries {
public:
    explicit TruncatedSeries(SeriesShape shape, ExtRational bound = std::nullopt)
        : shape_(std::move(shape)), bound_(std::move(bound)) { normalize(); }
    TruncatedSeries(SeriesShape shape, std::map<Exponent, Scalar> entries, ExtRational bound);

    static TruncatedSeries constant(const SeriesShape& shape, const Scalar& c);
    static TruncatedSeries monomial(const SeriesShape& shape, const Scalar& c, const Exponent& e);

    const SeriesShape& shape() const { return shape_; }
    std::size_t num_vars() const { return shape_.m; }
    const std::map<Exponent, Scalar>& entries() const { return entries_; }
    const ExtRational& bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }
    bool is_zero() const { return entries_.empty(); } // zero below the bound
    bool is_exact_zero() const { return entries_.empty() && is_exact(); }

    Scalar coeff(const Exponent& x) const;

    // Least possible weight of any term, including unknown ones beyond the
    // bound; nullopt = +infinity (the exact zero series).
    ExtRational ord_low() const;

    TruncatedSeries operator-() const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;

    TruncatedSeries scalar_mul(const Scalar& c) const;
    TruncatedSeries monomial_mul(const Scalar& c, const Exponent& e) const;
    TruncatedSeries pow(unsigned long n) const;

    // Truncate to min(bound, n).
    TruncatedSeries truncated_to(const ExtRational& n) const;

    bool operator==(const TruncatedSeries& o) const;
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& var_names) const;

private:
    SeriesShape shape_;
    std::map<Exponent, Scalar> entries_;
    ExtRational bound_;
    void normalize();
};

// Boolean shadow of a series: the set of exponents with nonzero
// coefficient, exact below the same kind of weight bound.
class SupportSet {
public:
    explicit SupportSet(SeriesShape shape, ExtRational bound = std::nullopt)
        : shape_(std::move(shape)), bound_(std::move(bound)) { normalize(); }
    SupportSet(SeriesShape shape, std::set<Exponent> points, ExtRational bound);

    const SeriesShape& shape() const { return shape_; }
    const std::set<Exponent>& points() const { return points_; }
    const ExtRational& bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }
    bool empty() const { return points_.empty(); }
    bool contains(const Exponent& x) const { return points_.count(x) != 0; }

    SupportSet truncated_to(const ExtRational& n) const;

    bool operator==(const SupportSet& o) const;
    bool operator!=(const SupportSet& o) const { return !(*this == o); }

    std::string str() const; // "{0, 1, 2}" / "{(0,0), (1,1)}"

private:
    SeriesShape shape_;
    std::set<Exponent> points_;
    ExtRational bound_;
    void normalize();
};

// Coefficientwise image of a series under a coefficient valuation: each
// supported exponent carries the vK-value of its coefficient.
class TropicalSeries {
public:
    TropicalSeries(SeriesShape shape, std::map<Exponent, Rational> values, ExtRational bound);

    const SeriesShape& shape() const { return shape_; }
    const std::map<Exponent, Rational>& values() const { return values_; }
    const ExtRational& bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }

private:
    SeriesShape shape_;
    std::map<Exponent, Rational> values_;
    ExtRational bound_;
};

// d/dt_j termwise; exponent shifts down by the unit vector, coefficient
// picks up the old exponent, the bound drops by weight[j].
TruncatedSeries formal_derivative(const TruncatedSeries& a, std::size_t j);

// Boolean counterpart: points with e_j = 0 die, everything else shifts.
SupportSet support_derivative(const SupportSet& a, std::size_t j);

// Order-2 valuation: (w-weight of the minimal term, vK of its coefficient).
// The minimal term is unique after breaking weight ties lexicographically.
// Nonzero exact zero input gives Infinite; an empty inexact series throws
// IndeterminateBelowBound.
TropValue valuation_v(const TruncatedSeries& a, const CoeffValuation& vk);

// Coefficientwise valuation image.
TropicalSeries trop_series(const TruncatedSeries& a, const CoeffValuation& vk);

// The support (= trop_series under the trivial valuation).
SupportSet support(const TruncatedSeries& a);

// Leading-data maps into the rank-2 semiring. For supports the second slot
// is 0. Indeterminate on empty inexact inputs.
TropValue phi(const SupportSet& b);
TropValue phi(const TropicalSeries& b);

// Entries agree strictly below n (and below both bounds).
bool equal_below(const TruncatedSeries& a, const TruncatedSeries& b, const Rational& n);

} // namespace tropdiff

#endif
