#ifndef TROPDIFF_DIFFPOLY_HPP
#define TROPDIFF_DIFFPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "tropdiff/series.hpp"

namespace tropdiff {

// One jet variable x_i^(alpha): dependent variable index plus a derivative
// multi-index over the m independent variables.
struct JetVar {
    std::size_t var = 0;
    std::vector<unsigned long> deriv; // length m

    JetVar() = default;
    JetVar(std::size_t var_, std::vector<unsigned long> deriv_)
        : var(var_), deriv(std::move(deriv_)) {}

    unsigned long order() const;
    bool operator==(const JetVar& o) const { return var == o.var && deriv == o.deriv; }
    bool operator<(const JetVar& o) const {
        if (var != o.var) return var < o.var;
        return deriv < o.deriv;
    }
};

// Product of jet variables with multiplicities; the unit monomial is empty.
struct DiffMonomial {
    std::map<JetVar, unsigned long> jets;

    DiffMonomial() = default;
    static DiffMonomial unit() { return DiffMonomial(); }
    static DiffMonomial of(const JetVar& v, unsigned long mult = 1);

    bool is_unit() const { return jets.empty(); }
    unsigned long degree() const;
    DiffMonomial times(const DiffMonomial& o) const;
    // Remove one copy of v; precondition: v occurs.
    DiffMonomial divided_by_one(const JetVar& v) const;

    bool operator==(const DiffMonomial& o) const { return jets == o.jets; }
    // Display/canonical order: higher degree first, then higher jets first.
    bool operator<(const DiffMonomial& o) const;
};

// Differential polynomial: finite sum of series coefficients times jet
// monomials, in n dependent and m independent variables. Coefficients all
// live over one SeriesShape. Canonical: no zero coefficient survives.
class DiffPolynomial {
public:
    DiffPolynomial(std::size_t num_dep, SeriesShape shape)
        : n_(num_dep), shape_(std::move(shape)) {}
    DiffPolynomial(std::size_t num_dep, SeriesShape shape,
                   std::map<DiffMonomial, TruncatedSeries> terms);

    std::size_t num_dep() const { return n_; }
    std::size_t num_indep() const { return shape_.m; }
    const SeriesShape& shape() const { return shape_; }
    const std::map<DiffMonomial, TruncatedSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static DiffPolynomial from_series(std::size_t num_dep, const TruncatedSeries& c);
    static DiffPolynomial from_jet(std::size_t num_dep, const SeriesShape& shape, const JetVar& v);

    DiffPolynomial operator-() const;
    DiffPolynomial operator+(const DiffPolynomial& o) const;
    DiffPolynomial operator-(const DiffPolynomial& o) const;
    DiffPolynomial operator*(const DiffPolynomial& o) const;
    DiffPolynomial pow(unsigned long k) const;
    DiffPolynomial series_mul(const TruncatedSeries& c) const;
    DiffPolynomial scalar_mul(const Scalar& c) const;

    // Highest derivative order appearing, per dependent variable ignored;
    // overall order of the equation.
    unsigned long order() const;

    bool operator==(const DiffPolynomial& o) const;
    bool operator!=(const DiffPolynomial& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names) const;

private:
    std::size_t n_;
    SeriesShape shape_;
    std::map<DiffMonomial, TruncatedSeries> terms_;
    void add_term(const DiffMonomial& mono, const TruncatedSeries& c);
    friend DiffPolynomial total_derivative(const DiffPolynomial& f, std::size_t j);
};

using GeneratorSet = std::vector<DiffPolynomial>;

// d/dt_j by the Leibniz rule: differentiates coefficients and advances one
// jet at a time. Exact on exact inputs.
DiffPolynomial total_derivative(const DiffPolynomial& f, std::size_t j);
DiffPolynomial total_derivative_multi(const DiffPolynomial& f,
                                      const std::vector<unsigned long>& alpha);

// Evaluate f at the candidate phi (one series per dependent variable).
// All needed jet derivatives of each phi_i are computed once up front.
// Truncation bounds propagate through the series arithmetic.
TruncatedSeries substitute(const DiffPolynomial& f, const std::vector<TruncatedSeries>& phi);

// Substitution oracle: substitute phi into every generator and demand each
// residual be zero below weight n (below its own propagated bound when n is
// nullopt). Throws InsufficientPrecision when a residual has no nonzero
// entry but is not known far enough to certify the requested range.
bool is_solution_mod_bound(const GeneratorSet& gens, const std::vector<TruncatedSeries>& phi,
                           const ExtRational& n);

std::string jet_str(const JetVar& v, const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names);

} // namespace tropdiff

#endif
