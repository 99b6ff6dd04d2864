#include "tropdiff/transseries.hpp"

#include <sstream>

#include "tropdiff/errors.hpp"

namespace tropdiff {

std::string LogMonomial::str() const {
    std::ostringstream os;
    os << "t^" << a << "*log^" << b;
    return os.str();
}

BoolTransseries::BoolTransseries(std::set<LogMonomial> points, std::optional<LogMonomial> horizon)
    : points_(std::move(points)), horizon_(std::move(horizon)) {
    if (horizon_)
        for (auto it = points_.begin(); it != points_.end();)
            it = (*it < *horizon_) ? std::next(it) : points_.erase(it);
}

std::string BoolTransseries::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const LogMonomial& p : points_) {
        os << (first ? "" : ", ") << "(" << p.a << "," << p.b << ")";
        first = false;
    }
    os << "}";
    if (horizon_) os << " below (" << horizon_->a << "," << horizon_->b << ")";
    return os.str();
}

BoolTransseries log_derive(const BoolTransseries& b) {
    std::set<LogMonomial> out;
    for (const LogMonomial& p : b.points()) {
        if (p.a != 0) out.insert(LogMonomial(p.a - 1, p.b));
        if (p.b != 0) out.insert(LogMonomial(p.a - 1, p.b - 1));
    }
    std::optional<LogMonomial> h = b.horizon();
    if (h) h = LogMonomial(h->a - 1, h->b);
    return BoolTransseries(std::move(out), std::move(h));
}

TropValue phi_log(const BoolTransseries& b) {
    if (b.empty()) {
        if (b.is_exact()) return TropValue::infinite(2);
        throw IndeterminateBelowBound("log support is empty below its horizon");
    }
    const LogMonomial& p = *b.points().begin();
    return TropValue({Rational(p.a), Rational(p.b)});
}

namespace {

// Iterated log_derive, memoized per candidate.
class DeriveTable {
public:
    explicit DeriveTable(const std::vector<BoolTransseries>& cand) {
        rows_.reserve(cand.size());
        for (const BoolTransseries& b : cand) rows_.push_back({b});
    }
    const BoolTransseries& get(std::size_t var, unsigned long k) {
        auto& row = rows_.at(var);
        while (row.size() <= k) row.push_back(log_derive(row.back()));
        return row[k];
    }

private:
    std::vector<std::vector<BoolTransseries>> rows_;
};

void require_log_generator(const DiffPolynomial& g) {
    if (g.num_indep() != 1 || g.shape().weight != std::vector<Rational>{Rational(1)})
        throw MismatchError("log-mode checker needs one independent variable of weight 1");
    for (const auto& [mono, c] : g.terms()) {
        (void)mono;
        if (!c.is_exact())
            throw MismatchError("log-mode checker needs exact polynomial coefficients");
        for (const auto& [e, coeff] : c.entries()) {
            (void)coeff;
            if (!is_integer(e[0]) || e[0] < 0)
                throw MismatchError("log-mode checker needs polynomial coefficients");
        }
    }
}

} // namespace

std::optional<LogCheckFailure> log_check_detail(const GeneratorSet& gens,
                                                const std::vector<BoolTransseries>& cand,
                                                unsigned long k_max, const CoeffValuation& vk) {
    if (!vk.is_trivial())
        throw MismatchError("log-mode checker is defined for the trivial coefficient valuation");
    DeriveTable table(cand);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        require_log_generator(gens[gi]);
        if (gens[gi].num_dep() != cand.size())
            throw MismatchError("candidate count != dependent variable count");
        DiffPolynomial cur = gens[gi];
        for (unsigned long k = 0; k <= k_max; ++k) {
            if (k > 0) cur = total_derivative(cur, 0);
            std::vector<TropValue> terms;
            terms.reserve(cur.terms().size());
            for (const auto& [mono, coeff] : cur.terms()) {
                TropValue val = valuation_v(coeff, vk);
                for (const auto& [jet, mult] : mono.jets)
                    val = trop_mul(val, trop_pow(phi_log(table.get(jet.var, jet.deriv[0])), mult));
                terms.push_back(std::move(val));
            }
            if (!tropically_vanishes(terms))
                return LogCheckFailure{gi, k, std::move(terms)};
        }
    }
    return std::nullopt;
}

bool is_trop_solution_logs(const GeneratorSet& gens, const std::vector<BoolTransseries>& cand,
                           unsigned long k_max, const CoeffValuation& vk) {
    return !log_check_detail(gens, cand, k_max, vk).has_value();
}

} // namespace tropdiff
