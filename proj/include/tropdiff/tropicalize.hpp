#ifndef TROPDIFF_TROPICALIZE_HPP
#define TROPDIFF_TROPICALIZE_HPP

#include <optional>

#include "tropdiff/diffpoly.hpp"

namespace tropdiff {

// Tropicalized differential polynomial: each jet monomial carries the
// rank-2 valuation of its coefficient. Terms whose coefficient is exactly
// zero never exist (the source is canonical), so no Infinite is stored.
class TropDiffPolynomial {
public:
    TropDiffPolynomial(std::size_t num_dep, std::size_t num_indep,
                       std::map<DiffMonomial, TropValue> terms)
        : n_(num_dep), m_(num_indep), terms_(std::move(terms)) {}

    std::size_t num_dep() const { return n_; }
    std::size_t num_indep() const { return m_; }
    const std::map<DiffMonomial, TropValue>& terms() const { return terms_; }

    bool operator==(const TropDiffPolynomial& o) const {
        return n_ == o.n_ && m_ == o.m_ && terms_ == o.terms_;
    }

    std::string str(const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names) const;

private:
    std::size_t n_, m_;
    std::map<DiffMonomial, TropValue> terms_;
};

// Coefficientwise valuation of a differential polynomial. Throws
// IndeterminateBelowBound if some coefficient is zero below its bound
// without being exactly zero.
TropDiffPolynomial tropicalize(const DiffPolynomial& f, const CoeffValuation& vk);

// Evaluate at a candidate support (one SupportSet per dependent variable):
// one rank-2 value per term, coefficient valuation (.)-times the
// support-derivative images of the jets. Term order follows the canonical
// monomial order. Throws when a needed leading datum is indeterminate.
std::vector<TropValue> trop_evaluate(const TropDiffPolynomial& tf,
                                     const std::vector<SupportSet>& b);

struct TropCheckFailure {
    std::size_t generator;                // index into the generator set
    std::vector<unsigned long> alpha;     // derivative multi-index
    std::vector<TropValue> terms;         // the non-vanishing evaluation
};

// Refutation-bounded membership test: the candidate support must make
// trop(d^alpha F_j) vanish for every generator and every |alpha| <= K.
// True means "not refuted at derivative bound K", not full membership.
bool is_tropical_solution_up_to(const GeneratorSet& gens, const std::vector<SupportSet>& b,
                                unsigned long k, const CoeffValuation& vk);

// Same test, reporting the first failing (generator, alpha) if any.
std::optional<TropCheckFailure> trop_check_detail(const GeneratorSet& gens,
                                                  const std::vector<SupportSet>& b,
                                                  unsigned long k, const CoeffValuation& vk);

// Exhaustive search over subsets of the integer window {0,...,n} for a
// single ordinary unknown: every subset, treated as exact support, that
// survives is_tropical_solution_up_to(gens, ., k). Output sorted by point
// set. Feasible for n up to ~14 (2^(n+1) candidates).
std::vector<SupportSet> search_boolean_solutions(const GeneratorSet& gens, unsigned long n,
                                                 unsigned long k, const CoeffValuation& vk);

// All derivative multi-indices over m variables with |alpha| <= k, in
// graded lexicographic order.
std::vector<std::vector<unsigned long>> derivative_multi_indices(std::size_t m, unsigned long k);

} // namespace tropdiff

#endif
