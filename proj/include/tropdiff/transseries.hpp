#ifndef TROPDIFF_TRANSSERIES_HPP
#define TROPDIFF_TRANSSERIES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/tropical.hpp"

namespace tropdiff {

// Monomial t^a * (log t)^b in the group generated by t and log t, ordered
// lexicographically on (a, b) (t dominates log t).
struct LogMonomial {
    long a = 0;
    long b = 0;

    LogMonomial() = default;
    LogMonomial(long a_, long b_) : a(a_), b(b_) {}

    bool operator==(const LogMonomial& o) const { return a == o.a && b == o.b; }
    bool operator!=(const LogMonomial& o) const { return !(*this == o); }
    bool operator<(const LogMonomial& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }

    std::string str() const; // "t^1*log^1"
};

// Support of a transseries over {t, log t}: a finite point set, exact below
// an optional lex horizon. Points at or beyond the horizon are dropped.
class BoolTransseries {
public:
    explicit BoolTransseries(std::set<LogMonomial> points,
                             std::optional<LogMonomial> horizon = std::nullopt);

    const std::set<LogMonomial>& points() const { return points_; }
    const std::optional<LogMonomial>& horizon() const { return horizon_; }
    bool is_exact() const { return !horizon_.has_value(); }
    bool empty() const { return points_.empty(); }

    bool operator==(const BoolTransseries& o) const {
        return points_ == o.points_ && horizon_ == o.horizon_;
    }

    std::string str() const; // "{(1,1), (2,5)}"

private:
    std::set<LogMonomial> points_;
    std::optional<LogMonomial> horizon_;
};

// Support-level derivation: (a,b) contributes (a-1,b) when a != 0 and
// (a-1,b-1) when b != 0; (0,0) dies. The horizon shifts by (-1,0).
BoolTransseries log_derive(const BoolTransseries& b);

// Lex-min point as a rank-2 value; Infinite for the exact empty set,
// IndeterminateBelowBound when only the horizon keeps the set empty.
TropValue phi_log(const BoolTransseries& b);

struct LogCheckFailure {
    std::size_t generator;
    unsigned long k; // derivative order at which tropical vanishing fails
    std::vector<TropValue> terms;
};

// Tropical solution test in log mode: every d^k g, k <= k_max, must
// tropically vanish when jets are evaluated through phi_log of iterated
// log_derive. Generators must be univariate with exact polynomial
// coefficients over the weight-1 shape, and vk must be trivial (the second
// slot carries log exponents, which only compose with zero coefficient
// values).
std::optional<LogCheckFailure> log_check_detail(const GeneratorSet& gens,
                                                const std::vector<BoolTransseries>& cand,
                                                unsigned long k_max, const CoeffValuation& vk);

bool is_trop_solution_logs(const GeneratorSet& gens, const std::vector<BoolTransseries>& cand,
                           unsigned long k_max, const CoeffValuation& vk);

} // namespace tropdiff

#endif
