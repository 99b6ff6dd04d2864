#include "tropdiff/rational.hpp"

#include "tropdiff/errors.hpp"

namespace tropdiff {

Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw Error("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw Error("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

Integer floor_div(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

bool on_grid(const Rational& q, unsigned long d) {
    Rational scaled = q * static_cast<long>(d);
    return is_integer(scaled);
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size())
        throw MismatchError("dot product of vectors of different length");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ExtRational ext_min(const ExtRational& a, const ExtRational& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

ExtRational ext_add(const ExtRational& a, const ExtRational& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

bool ext_less(const ExtRational& a, const ExtRational& b) {
    if (!b) return static_cast<bool>(a); // anything finite < inf; inf !< inf
    if (!a) return false;
    return *a < *b;
}

std::string ext_str(const ExtRational& a) {
    return a ? rational_str(*a) : "inf";
}

} // namespace tropdiff
