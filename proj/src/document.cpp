#include "tropdiff/document.hpp"

#include <sstream>

namespace tropdiff {

const Candidate* SystemDocument::find_candidate(const std::string& name) const {
    for (const Candidate& c : candidates)
        if (c.name == name) return &c;
    return nullptr;
}

const TransformSpec* SystemDocument::find_transform(const std::string& name) const {
    for (const NamedTransform& t : transforms)
        if (t.name == name) return &t.spec;
    return nullptr;
}

bool SystemDocument::operator==(const SystemDocument& o) const {
    return indep_names == o.indep_names && dep_names == o.dep_names && shape == o.shape &&
           field_radicand == o.field_radicand && valuation == o.valuation &&
           gen_names == o.gen_names && gens == o.gens && candidates == o.candidates &&
           transforms == o.transforms;
}

namespace {

template <typename T, typename F>
void join_into(std::ostringstream& os, const std::vector<T>& xs, F show) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        os << show(xs[i]);
    }
}

std::string log_points_str(const BoolTransseries& b) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const LogMonomial& p : b.points()) {
        os << (first ? "" : ", ") << "(" << p.a << "," << p.b << ")";
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

std::string print_document(const SystemDocument& doc) {
    std::ostringstream os;
    os << "indep ";
    join_into(os, doc.indep_names, [](const std::string& s) { return s; });
    os << ";\ndep ";
    join_into(os, doc.dep_names, [](const std::string& s) { return s; });
    os << ";\ngrid ";
    join_into(os, doc.shape.grid, [](unsigned long g) { return std::to_string(g); });
    os << ";\nweight ";
    join_into(os, doc.shape.weight, [](const Rational& w) { return rational_str(w); });
    os << ";\n";
    if (doc.field_radicand)
        os << "field sqrt(" << doc.field_radicand << ");\n";
    else
        os << "field rational;\n";
    if (doc.valuation.is_trivial())
        os << "valuation trivial;\n";
    else
        os << "valuation p-adic(" << doc.valuation.prime() << ");\n";

    os << "\n";
    for (std::size_t i = 0; i < doc.gens.size(); ++i)
        os << doc.gen_names[i] << " = " << doc.gens[i].str(doc.indep_names, doc.dep_names)
           << ";\n";

    if (!doc.candidates.empty()) os << "\n";
    for (const Candidate& c : doc.candidates) {
        os << "candidate " << c.name << " ";
        ExtRational bound;
        switch (c.kind) {
        case CandidateKind::Series:
            os << "series ";
            join_into(os, c.series,
                      [&](const TruncatedSeries& s) { return s.str(doc.indep_names); });
            if (!c.series.empty()) bound = c.series.front().bound();
            break;
        case CandidateKind::Support:
            os << "support ";
            join_into(os, c.supports, [](const SupportSet& s) { return s.str(); });
            if (!c.supports.empty()) bound = c.supports.front().bound();
            break;
        case CandidateKind::LogSupport:
            os << "logsupport ";
            join_into(os, c.log_supports, log_points_str);
            break;
        }
        if (bound) os << " bound " << rational_str(*bound);
        os << ";\n";
    }

    if (!doc.transforms.empty()) os << "\n";
    for (const NamedTransform& t : doc.transforms)
        os << "transform " << t.name << " \"" << t.spec.str() << "\";\n";
    return os.str();
}

} // namespace tropdiff
