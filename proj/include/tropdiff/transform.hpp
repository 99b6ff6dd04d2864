#ifndef TROPDIFF_TRANSFORM_HPP
#define TROPDIFF_TRANSFORM_HPP

#include <set>

#include "tropdiff/diffpoly.hpp"

namespace tropdiff {

// Small dense matrix over the rationals, just enough for exponent maps.
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<Rational>(cols, Rational(0))) {}
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }

    QMatrix operator*(const QMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    QMatrix transposed() const;
    // Gauss-Jordan; throws SingularMatrixError.
    QMatrix inverse() const;

    bool operator==(const QMatrix& o) const { return a_ == o.a_; }

private:
    std::size_t rows_, cols_;
    std::vector<std::vector<Rational>> a_;
};

// One monomial blow-up: variable j multiplies into every other variable of
// I. Indices are 0-based; |I| >= 2 and j in I.
struct BlowUp {
    std::set<std::size_t> vars; // I
    std::size_t center;         // j

    bool operator==(const BlowUp& o) const { return vars == o.vars && center == o.center; }
};

// Change of coordinates reducing Laurent/Puiseux/grid-fractional solving to
// the plain power series case: per-variable ramification powers d, a
// rational shift l of the unknowns, and a word of blow-ups. The induced
// monomial substitution sends original variable t_i to kappa_i(s)^{d_i},
// where kappa composes the blow-ups left to right (first listed outermost).
// Supports move by e |-> M^T (e + l) with M the exponent matrix below.
struct TransformSpec {
    std::vector<unsigned long> power;  // d, all >= 1
    std::vector<Rational> shift;       // l
    std::vector<BlowUp> blowups;

    std::size_t num_vars() const { return power.size(); }
    void validate() const;

    // Round-trips with parse_transform_spec.
    std::string str() const; // "power 2 ; shift 0" / "... ; blowup 1,2->2"
    bool operator==(const TransformSpec& o) const {
        return power == o.power && shift == o.shift && blowups == o.blowups;
    }
};

TransformSpec parse_transform_spec(const std::string& text, std::size_t m);

// Exponent matrix M of the induced monomial substitution (row i = exponent
// vector of the monomial replacing t_i) and its exact inverse.
std::pair<QMatrix, QMatrix> kappa_exponent_map(const TransformSpec& spec);

// phi |-> (t^l * phi) o kappa: exponents move by M^T(e + l), coefficients
// are untouched. The result must land on the nonnegative integer grid;
// otherwise OffGridResult. The weight vector becomes M^-1 w (whose
// positivity is required) so term weights are preserved up to the constant
// w.l, and the bound moves by exactly that constant.
TruncatedSeries transform_series(const TransformSpec& spec, const TruncatedSeries& phi);

// Same exponent action on a bare support.
SupportSet transform_support(const TransformSpec& spec, const SupportSet& s);

// Pointwise e |-> M^-T e - l; grid denominators are refreshed from the
// inverse map (= d when the shift lies on the d-grid), weight becomes M w.
SupportSet inverse_transform_support(const TransformSpec& spec, const SupportSet& s);

// Compares supp(series substitution of the monomial map) against the
// exponent-map image of supp(phi), coefficient cancellation included on
// the left. Works on raw point sets so off-grid images are fine.
bool support_equivariance_check(const TransformSpec& spec, const TruncatedSeries& phi);

struct TransformedSystem {
    GeneratorSet gens;
    SeriesShape shape;
};

// Rewrite a system in the new coordinates: coefficients are substituted
// through the monomial map, jets of the old unknowns are expressed in jets
// of the new ones by repeated formal differentiation and exact solves
// against the (invertible, monomial) Jacobian, and each generator is
// cleared of denominators and common monomial content.
TransformedSystem transform_system(const TransformSpec& spec, const GeneratorSet& gens);

// Divide by the lowest term of the coefficient of the least monomial, so
// two systems equal up to a unit monomial factor compare equal.
DiffPolynomial normalize_up_to_unit(const DiffPolynomial& g);

// Heuristic: the least ordinary (k, l) making phi's support land on the
// nonnegative integers, if any does within max_k. m = 1 only.
std::optional<TransformSpec> find_ordinary_transform(const TruncatedSeries& phi,
                                                     unsigned long max_k);

} // namespace tropdiff

#endif
