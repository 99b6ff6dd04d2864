#include "tropdiff/scalar.hpp"

#include "tropdiff/errors.hpp"

namespace tropdiff {

Scalar::Scalar(Rational re, Rational im, unsigned long d)
    : re_(std::move(re)), im_(std::move(im)), d_(d) {
    re_.canonicalize(); // defend against num/den-pair construction
    im_.canonicalize();
    if (im_ != 0 && d_ == 0)
        throw Error("radical part requires a positive radicand");
    if (im_ == 0) d_ = 0;
}

unsigned long Scalar::common_radicand(const Scalar& a, const Scalar& b) {
    if (a.d_ == 0) return b.d_;
    if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
    throw MismatchError("mixing sqrt(" + std::to_string(a.d_) + ") and sqrt(" +
                        std::to_string(b.d_) + ") scalars");
}

Scalar Scalar::operator+(const Scalar& o) const {
    unsigned long d = common_radicand(*this, o);
    return Scalar(re_ + o.re_, im_ + o.im_, (im_ + o.im_ == 0) ? 0 : d);
}

Scalar Scalar::operator*(const Scalar& o) const {
    unsigned long d = common_radicand(*this, o);
    Rational re = re_ * o.re_ + im_ * o.im_ * static_cast<long>(d);
    Rational im = re_ * o.im_ + im_ * o.re_;
    return Scalar(std::move(re), std::move(im), im == 0 ? 0 : d);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw Error("division by zero scalar");
    if (o.is_rational()) {
        return Scalar(re_ / o.re_, im_ / o.re_, im_ == 0 ? 0 : d_);
    }
    // Multiply by the conjugate; sqrt(D) irrational makes the norm nonzero.
    unsigned long d = common_radicand(*this, o);
    Rational norm = o.re_ * o.re_ - o.im_ * o.im_ * static_cast<long>(d);
    Scalar conj(o.re_, -o.im_, d);
    Scalar num = *this * conj;
    return Scalar(num.re_ / norm, num.im_ / norm, num.im_ == 0 ? 0 : d);
}

std::string Scalar::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string rad = "sqrt(" + std::to_string(d_) + ")";
    std::string imti;
    if (im_ == 1) imti = rad;
    else if (im_ == -1) imti = "-" + rad;
    else imti = rational_str(im_) + "*" + rad;
    if (re_ == 0) return imti;
    if (im_ < 0) {
        Scalar neg(Rational(0), -im_, d_);
        return "(" + rational_str(re_) + " - " + neg.str() + ")";
    }
    return "(" + rational_str(re_) + " + " + imti + ")";
}

CoeffValuation CoeffValuation::p_adic(unsigned long p) {
    if (p < 2) throw Error("p-adic valuation needs a prime p >= 2");
    return CoeffValuation(p);
}

Rational CoeffValuation::operator()(const Scalar& c) const {
    if (c.is_zero()) throw Error("valuation of the zero scalar");
    if (is_trivial()) return Rational(0);
    if (!c.is_rational())
        throw Error("p-adic valuation is defined on rational scalars only");
    Integer p(static_cast<long>(p_));
    long v = 0;
    Integer num = c.rational_part().get_num();
    Integer den = c.rational_part().get_den();
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    return Rational(v);
}

std::string CoeffValuation::str() const {
    return is_trivial() ? "trivial" : "p-adic " + std::to_string(p_);
}

} // namespace tropdiff
