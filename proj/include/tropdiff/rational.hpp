#ifndef TROPDIFF_RATIONAL_HPP
#define TROPDIFF_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace tropdiff {

// Exact arbitrary-precision rational. GMP keeps these canonical
// (coprime, positive denominator) as long as they are built through
// arithmetic; strings go through parse_rational below.
using Rational = mpq_class;
using Integer = mpz_class;

// Extended rational used for truncation bounds: nullopt means +infinity,
// i.e. the series/support is exact.
using ExtRational = std::optional<Rational>;

Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string rational_str(const Rational& q);

bool is_integer(const Rational& q);

// Largest integer <= q.
Integer floor_div(const Rational& q);

// q * d is an integer, i.e. q lies on the 1/d grid.
bool on_grid(const Rational& q, unsigned long d);

// Dot product of equally sized vectors.
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

// min with nullopt = +infinity.
ExtRational ext_min(const ExtRational& a, const ExtRational& b);
// a + b where either side may be +infinity.
ExtRational ext_add(const ExtRational& a, const ExtRational& b);
// a < b in the extended order.
bool ext_less(const ExtRational& a, const ExtRational& b);

std::string ext_str(const ExtRational& a);

} // namespace tropdiff

#endif
