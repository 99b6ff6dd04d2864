#ifndef TROPDIFF_SCALAR_HPP
#define TROPDIFF_SCALAR_HPP

#include <string>

#include "tropdiff/rational.hpp"

namespace tropdiff {

// Coefficient field element: a + b*sqrt(D) with a, b rational and D a
// square-free positive integer fixed by the enclosing computation.
// Invariant: b == 0 implies D == 0 (plain rationals carry D = 0), so
// equality is structural. Elements with different nonzero D never mix.
class Scalar {
public:
    Scalar() : re_(0), im_(0), d_(0) {}
    Scalar(Rational re) : re_(std::move(re)), im_(0), d_(0) { // NOLINT(google-explicit-constructor)
        re_.canonicalize();
    }
    Scalar(long n) : re_(n), im_(0), d_(0) {}                  // NOLINT(google-explicit-constructor)
    Scalar(Rational re, Rational im, unsigned long d);

    static Scalar sqrt_of(unsigned long d) { return Scalar(Rational(0), Rational(1), d); }

    const Rational& rational_part() const { return re_; }
    const Rational& radical_part() const { return im_; }
    unsigned long radicand() const { return d_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_ && d_ == o.d_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const { return Scalar(-re_, -im_, d_); }
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const;
    // Exact division; throws on zero divisor.
    Scalar operator/(const Scalar& o) const;

    std::string str() const; // "3", "-1/2", "sqrt(2)", "(3 + 2*sqrt(2))"

private:
    Rational re_, im_;
    unsigned long d_;
    static unsigned long common_radicand(const Scalar& a, const Scalar& b);
};

// Valuation on the coefficient field: trivial, or the p-adic valuation on
// the rationals for a fixed prime p (defined on plain rationals only).
class CoeffValuation {
public:
    static CoeffValuation trivial() { return CoeffValuation(0); }
    static CoeffValuation p_adic(unsigned long p);

    bool is_trivial() const { return p_ == 0; }
    unsigned long prime() const { return p_; }

    // v(c) for nonzero c; throws on zero input (that case is the series
    // layer's job) and on non-rational input under a p-adic valuation.
    Rational operator()(const Scalar& c) const;

    bool operator==(const CoeffValuation& o) const { return p_ == o.p_; }
    std::string str() const;

private:
    explicit CoeffValuation(unsigned long p) : p_(p) {}
    unsigned long p_;
};

} // namespace tropdiff

#endif
