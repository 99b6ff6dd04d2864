#include "tropdiff/json_io.hpp"

namespace tropdiff {

Json rational_json(const Rational& q) { return rational_str(q); }

Json ext_json(const ExtRational& b) {
    if (!b) return nullptr;
    return rational_json(*b);
}

Json exponent_json(const Exponent& e) {
    Json a = Json::array();
    for (std::size_t i = 0; i < e.size(); ++i) a.push_back(rational_json(e[i]));
    return a;
}

Json trop_value_json(const TropValue& v) {
    if (v.is_infinite()) return "inf";
    Json a = Json::array();
    for (const Rational& c : v.components()) a.push_back(rational_json(c));
    return a;
}

Json series_json(const TruncatedSeries& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.entries())
        terms.push_back(Json{{"exponent", exponent_json(e)}, {"coeff", c.str()}});
    return Json{{"terms", std::move(terms)}, {"bound", ext_json(s.bound())}};
}

Json support_json(const SupportSet& s) {
    Json pts = Json::array();
    for (const Exponent& e : s.points()) pts.push_back(exponent_json(e));
    return Json{{"points", std::move(pts)}, {"bound", ext_json(s.bound())}};
}

Json log_support_json(const BoolTransseries& b) {
    Json pts = Json::array();
    for (const LogMonomial& p : b.points()) pts.push_back(Json::array({p.a, p.b}));
    Json horizon = nullptr;
    if (b.horizon()) horizon = Json::array({b.horizon()->a, b.horizon()->b});
    return Json{{"points", std::move(pts)}, {"horizon", std::move(horizon)}};
}

Json trop_poly_json(const TropDiffPolynomial& f, const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names) {
    Json terms = Json::array();
    for (const auto& [mono, val] : f.terms()) {
        std::string mstr;
        for (const auto& [v, mult] : mono.jets) {
            if (!mstr.empty()) mstr += "*";
            mstr += jet_str(v, indep_names, dep_names);
            if (mult > 1) mstr += "^" + std::to_string(mult);
        }
        if (mstr.empty()) mstr = "1";
        terms.push_back(Json{{"monomial", mstr}, {"value", trop_value_json(val)}});
    }
    return terms;
}

Json document_json(const SystemDocument& doc) {
    Json j;
    j["indep"] = doc.indep_names;
    j["dep"] = doc.dep_names;
    j["grid"] = doc.shape.grid;
    Json w = Json::array();
    for (const Rational& x : doc.shape.weight) w.push_back(rational_json(x));
    j["weight"] = std::move(w);
    j["field"] = doc.field_radicand;
    j["valuation"] = doc.valuation.str();
    Json gens = Json::array();
    for (std::size_t i = 0; i < doc.gens.size(); ++i)
        gens.push_back(Json{{"name", doc.gen_names[i]},
                            {"text", doc.gens[i].str(doc.indep_names, doc.dep_names)}});
    j["generators"] = std::move(gens);
    Json cands = Json::array();
    for (const Candidate& c : doc.candidates) {
        Json jc;
        jc["name"] = c.name;
        switch (c.kind) {
        case CandidateKind::Series: {
            jc["kind"] = "series";
            Json xs = Json::array();
            for (const TruncatedSeries& s : c.series) xs.push_back(series_json(s));
            jc["series"] = std::move(xs);
            break;
        }
        case CandidateKind::Support: {
            jc["kind"] = "support";
            Json xs = Json::array();
            for (const SupportSet& s : c.supports) xs.push_back(support_json(s));
            jc["supports"] = std::move(xs);
            break;
        }
        case CandidateKind::LogSupport: {
            jc["kind"] = "logsupport";
            Json xs = Json::array();
            for (const BoolTransseries& s : c.log_supports) xs.push_back(log_support_json(s));
            jc["logsupports"] = std::move(xs);
            break;
        }
        }
        cands.push_back(std::move(jc));
    }
    j["candidates"] = std::move(cands);
    Json trs = Json::array();
    for (const NamedTransform& t : doc.transforms)
        trs.push_back(Json{{"name", t.name}, {"spec", t.spec.str()}});
    j["transforms"] = std::move(trs);
    return j;
}

} // namespace tropdiff
