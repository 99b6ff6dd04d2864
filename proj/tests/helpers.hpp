#ifndef TROPDIFF_TEST_HELPERS_HPP
#define TROPDIFF_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <vector>

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/tropical.hpp"
#include "tropdiff/transform.hpp"

namespace tropdiff::testing {

using Rng = std::mt19937_64;

inline long rand_long(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng, long maxnum = 9, long maxden = 4) {
    Rational q(rand_long(rng, -maxnum, maxnum), rand_long(rng, 1, maxden));
    q.canonicalize();
    return q;
}

inline Rational rand_nonzero_rational(Rng& rng, long maxnum = 9, long maxden = 4) {
    for (;;) {
        Rational q = rand_rational(rng, maxnum, maxden);
        if (q != 0) return q;
    }
}

inline TropValue rand_trop(Rng& rng, int rank, int inf_percent = 20) {
    if (rand_long(rng, 0, 99) < inf_percent) return TropValue::infinite(rank);
    std::vector<Rational> c;
    for (int i = 0; i < rank; ++i) c.push_back(rand_rational(rng));
    return TropValue(std::move(c));
}

inline SeriesShape rand_shape(Rng& rng, std::size_t max_m = 3) {
    std::size_t m = static_cast<std::size_t>(rand_long(rng, 1, static_cast<long>(max_m)));
    std::vector<unsigned long> grid;
    std::vector<Rational> weight;
    for (std::size_t i = 0; i < m; ++i) {
        grid.push_back(static_cast<unsigned long>(rand_long(rng, 1, 3)));
        weight.push_back(Rational(rand_long(rng, 1, 4), rand_long(rng, 1, 2)));
    }
    return SeriesShape(m, std::move(grid), std::move(weight));
}

// Exponent on the shape's grid; nonnegative unless laurent is set.
inline Exponent rand_exponent(Rng& rng, const SeriesShape& shape, bool laurent = false) {
    std::vector<Rational> e;
    for (std::size_t i = 0; i < shape.m; ++i) {
        long num = rand_long(rng, laurent ? -6 : 0, 6);
        e.emplace_back(num, static_cast<long>(shape.grid[i]));
        e.back().canonicalize();
    }
    return Exponent(std::move(e));
}

inline TruncatedSeries rand_series(Rng& rng, const SeriesShape& shape, int max_terms = 5,
                                   bool laurent = false, bool exact = true) {
    std::map<Exponent, Scalar> entries;
    int terms = static_cast<int>(rand_long(rng, 0, max_terms));
    for (int i = 0; i < terms; ++i)
        entries[rand_exponent(rng, shape, laurent)] = Scalar(rand_nonzero_rational(rng));
    ExtRational bound;
    if (!exact) bound = Rational(rand_long(rng, laurent ? -2 : 1, 9));
    return TruncatedSeries(shape, std::move(entries), bound);
}

inline TruncatedSeries rand_nonzero_series(Rng& rng, const SeriesShape& shape,
                                           int max_terms = 5, bool laurent = false,
                                           bool exact = true) {
    for (;;) {
        TruncatedSeries s = rand_series(rng, shape, max_terms, laurent, exact);
        if (!s.entries().empty()) return s;
    }
}

inline JetVar rand_jet(Rng& rng, std::size_t n, std::size_t m, unsigned long max_order = 2) {
    std::vector<unsigned long> deriv(m, 0);
    unsigned long total = static_cast<unsigned long>(rand_long(rng, 0, static_cast<long>(max_order)));
    for (unsigned long i = 0; i < total; ++i)
        deriv[static_cast<std::size_t>(rand_long(rng, 0, static_cast<long>(m) - 1))]++;
    return JetVar(static_cast<std::size_t>(rand_long(rng, 0, static_cast<long>(n) - 1)),
                  std::move(deriv));
}

inline DiffPolynomial rand_diffpoly(Rng& rng, std::size_t n, const SeriesShape& shape,
                                    int max_terms = 4) {
    DiffPolynomial f(n, shape);
    int terms = static_cast<int>(rand_long(rng, 1, max_terms));
    for (int i = 0; i < terms; ++i) {
        DiffMonomial mono;
        int deg = static_cast<int>(rand_long(rng, 0, 2));
        for (int j = 0; j < deg; ++j)
            mono = mono.times(DiffMonomial::of(rand_jet(rng, n, shape.m)));
        TruncatedSeries c = rand_nonzero_series(rng, shape, 3);
        f = f + DiffPolynomial(n, shape, {{mono, c}});
    }
    return f;
}

// Random transform spec on m variables: powers <= 3, shift with small
// denominators, at most two blow-ups.
inline TransformSpec rand_spec(Rng& rng, std::size_t m, bool with_shift = true) {
    TransformSpec spec;
    for (std::size_t i = 0; i < m; ++i)
        spec.power.push_back(static_cast<unsigned long>(rand_long(rng, 1, 3)));
    for (std::size_t i = 0; i < m; ++i)
        spec.shift.push_back(with_shift ? Rational(rand_long(rng, -4, 4),
                                                   static_cast<long>(spec.power[i]))
                                        : Rational(0));
    if (m >= 2) {
        int nblow = static_cast<int>(rand_long(rng, 0, 2));
        for (int b = 0; b < nblow; ++b) {
            std::set<std::size_t> vars;
            while (vars.size() < 2)
                vars.insert(static_cast<std::size_t>(rand_long(rng, 0, static_cast<long>(m) - 1)));
            // maybe grow I beyond two variables
            if (m >= 3 && rand_long(rng, 0, 1) == 1)
                vars.insert(static_cast<std::size_t>(rand_long(rng, 0, static_cast<long>(m) - 1)));
            std::size_t center = *std::next(vars.begin(),
                                            rand_long(rng, 0, static_cast<long>(vars.size()) - 1));
            spec.blowups.push_back(BlowUp{vars, center});
        }
    }
    for (auto& s : spec.shift) s.canonicalize();
    return spec;
}

} // namespace tropdiff::testing

#endif
