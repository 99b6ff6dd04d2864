#include "tropdiff/tropicalize.hpp"

#include <algorithm>
#include <functional>

#include "tropdiff/errors.hpp"

namespace tropdiff {

TropDiffPolynomial tropicalize(const DiffPolynomial& f, const CoeffValuation& vk) {
    std::map<DiffMonomial, TropValue> terms;
    for (const auto& [mono, c] : f.terms())
        terms.emplace(mono, valuation_v(c, vk));
    return TropDiffPolynomial(f.num_dep(), f.num_indep(), std::move(terms));
}

namespace {

const SupportSet& derived_support(std::map<JetVar, SupportSet>& cache,
                                  const std::vector<SupportSet>& b, const JetVar& v) {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    SupportSet value = [&] {
        if (v.order() == 0) return b[v.var];
        JetVar below = v;
        std::size_t j = 0;
        while (below.deriv[j] == 0) ++j;
        below.deriv[j] -= 1;
        return support_derivative(derived_support(cache, b, below), j);
    }();
    return cache.emplace(v, std::move(value)).first->second;
}

} // namespace

std::vector<TropValue> trop_evaluate(const TropDiffPolynomial& tf,
                                     const std::vector<SupportSet>& b) {
    if (b.size() != tf.num_dep())
        throw MismatchError("candidate has wrong number of components");
    for (const auto& s : b)
        if (s.shape().m != tf.num_indep())
            throw MismatchError("candidate support lives over the wrong independent variables");
    std::map<JetVar, SupportSet> cache;
    std::vector<TropValue> out;
    out.reserve(tf.terms().size());
    for (const auto& [mono, val] : tf.terms()) {
        TropValue acc = val;
        for (const auto& [v, mult] : mono.jets)
            acc = trop_mul(acc, trop_pow(phi(derived_support(cache, b, v)), mult));
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<std::vector<unsigned long>> derivative_multi_indices(std::size_t m, unsigned long k) {
    std::vector<std::vector<unsigned long>> out;
    std::vector<unsigned long> cur(m, 0);
    // graded enumeration: all alpha with |alpha| = d, d = 0..k
    for (unsigned long d = 0; d <= k; ++d) {
        std::function<void(std::size_t, unsigned long)> rec = [&](std::size_t pos,
                                                                  unsigned long left) {
            if (pos + 1 == m) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (unsigned long i = left + 1; i-- > 0;) {
                cur[pos] = i;
                rec(pos + 1, left - i);
            }
        };
        rec(0, d);
    }
    return out;
}

std::optional<TropCheckFailure> trop_check_detail(const GeneratorSet& gens,
                                                  const std::vector<SupportSet>& b,
                                                  unsigned long k, const CoeffValuation& vk) {
    if (gens.empty()) return std::nullopt;
    std::size_t m = gens.front().num_indep();
    auto alphas = derivative_multi_indices(m, k);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        // Walk the derivative tree once per generator, deriving each alpha
        // from its canonical predecessor.
        std::map<std::vector<unsigned long>, DiffPolynomial> derived;
        derived.emplace(std::vector<unsigned long>(m, 0), gens[gi]);
        for (const auto& alpha : alphas) {
            auto it = derived.find(alpha);
            if (it == derived.end()) {
                std::vector<unsigned long> prev = alpha;
                std::size_t j = 0;
                while (prev[j] == 0) ++j;
                prev[j] -= 1;
                it = derived.emplace(alpha, total_derivative(derived.at(prev), j)).first;
            }
            std::vector<TropValue> terms = trop_evaluate(tropicalize(it->second, vk), b);
            if (!tropically_vanishes(terms))
                return TropCheckFailure{gi, alpha, std::move(terms)};
        }
    }
    return std::nullopt;
}

bool is_tropical_solution_up_to(const GeneratorSet& gens, const std::vector<SupportSet>& b,
                                unsigned long k, const CoeffValuation& vk) {
    return !trop_check_detail(gens, b, k, vk).has_value();
}

std::vector<SupportSet> search_boolean_solutions(const GeneratorSet& gens, unsigned long n,
                                                 unsigned long k, const CoeffValuation& vk) {
    if (gens.empty()) throw MismatchError("search needs at least one generator");
    const SeriesShape& shape = gens.front().shape();
    if (shape.m != 1 || gens.front().num_dep() != 1)
        throw MismatchError("subset search is implemented for one ordinary unknown only");
    if (shape.grid != std::vector<unsigned long>{1})
        throw MismatchError("subset search needs the integer grid");
    if (n > 20) throw MismatchError("search window too large to enumerate");

    // Derivatives and their tropicalizations do not depend on the subset.
    std::vector<TropDiffPolynomial> trops;
    for (const auto& g : gens) {
        DiffPolynomial d = g;
        for (unsigned long i = 0; i <= k; ++i) {
            trops.push_back(tropicalize(d, vk));
            if (i < k) d = total_derivative(d, 0);
        }
    }

    std::vector<SupportSet> found;
    const unsigned long count = 1ul << (n + 1);
    for (unsigned long mask = 0; mask < count; ++mask) {
        std::set<Exponent> points;
        for (unsigned long i = 0; i <= n; ++i)
            if (mask & (1ul << i)) points.insert(Exponent({Rational(static_cast<long>(i))}));
        std::vector<SupportSet> candidate{SupportSet(shape, std::move(points), std::nullopt)};
        bool ok = true;
        std::map<JetVar, SupportSet> cache;
        for (const auto& tf : trops) {
            std::vector<TropValue> terms;
            terms.reserve(tf.terms().size());
            for (const auto& [mono, val] : tf.terms()) {
                TropValue acc = val;
                for (const auto& [v, mult] : mono.jets)
                    acc = trop_mul(acc, trop_pow(phi(derived_support(cache, candidate, v)), mult));
                terms.push_back(std::move(acc));
            }
            if (!tropically_vanishes(terms)) {
                ok = false;
                break;
            }
        }
        if (ok) found.push_back(std::move(candidate.front()));
    }
    std::sort(found.begin(), found.end(),
              [](const SupportSet& a, const SupportSet& b2) { return a.points() < b2.points(); });
    return found;
}

std::string TropDiffPolynomial::str(const std::vector<std::string>& indep_names,
                                    const std::vector<std::string>& dep_names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, val] : terms_) {
        std::string mstr;
        for (const auto& [v, mult] : mono.jets) {
            if (!mstr.empty()) mstr += "*";
            mstr += jet_str(v, indep_names, dep_names);
            if (mult > 1) mstr += "^" + std::to_string(mult);
        }
        std::string term = val.str();
        if (!mstr.empty()) term += "*" + mstr;
        if (first) {
            out = term;
            first = false;
        } else {
            out += " + " + term;
        }
    }
    return out;
}

} // namespace tropdiff
