#ifndef TROPDIFF_DOCUMENT_HPP
#define TROPDIFF_DOCUMENT_HPP

#include <string>
#include <vector>

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/transform.hpp"
#include "tropdiff/transseries.hpp"

namespace tropdiff {

enum class CandidateKind { Series, Support, LogSupport };

// A named solution candidate: one entry per dependent variable. All
// components share one truncation bound (the file format attaches a single
// `bound` clause per candidate).
struct Candidate {
    std::string name;
    CandidateKind kind = CandidateKind::Series;
    std::vector<TruncatedSeries> series;       // kind == Series
    std::vector<SupportSet> supports;          // kind == Support
    std::vector<BoolTransseries> log_supports; // kind == LogSupport

    bool operator==(const Candidate& o) const {
        return name == o.name && kind == o.kind && series == o.series &&
               supports == o.supports && log_supports == o.log_supports;
    }
};

struct NamedTransform {
    std::string name;
    TransformSpec spec;
    bool operator==(const NamedTransform& o) const { return name == o.name && spec == o.spec; }
};

// One parsed system file: declarations fixing the ambient shape and
// coefficient field, named generators, optional named candidates and
// transform specs.
struct SystemDocument {
    std::vector<std::string> indep_names{"t"};
    std::vector<std::string> dep_names{"x"};
    SeriesShape shape;                // grid and weight over indep_names
    unsigned long field_radicand = 0; // 0: rationals, else adjoin sqrt(D)
    CoeffValuation valuation = CoeffValuation::trivial();
    std::vector<std::string> gen_names;
    GeneratorSet gens; // parallel to gen_names
    std::vector<Candidate> candidates;
    std::vector<NamedTransform> transforms;

    std::size_t num_indep() const { return indep_names.size(); }
    std::size_t num_dep() const { return dep_names.size(); }

    const Candidate* find_candidate(const std::string& name) const;
    const TransformSpec* find_transform(const std::string& name) const;

    bool operator==(const SystemDocument& o) const;
};

// Parses the system file format (grammar in the README). Throws ParseError
// with a 1-based line/column on syntax and semantic violations.
SystemDocument parse_document(const std::string& text);

// Canonical print: declarations, generators, candidates, transforms, each
// in stored order with every default spelled out. Satisfies
// parse_document(print_document(d)) == d.
std::string print_document(const SystemDocument& doc);

} // namespace tropdiff

#endif
