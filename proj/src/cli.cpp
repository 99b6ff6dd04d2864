#include "tropdiff/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "tropdiff/document.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/json_io.hpp"
#include "tropdiff/tropicalize.hpp"

namespace tropdiff {

namespace {

SystemDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

// --spec accepts either a name declared in the file or literal spec text.
TransformSpec resolve_spec(const SystemDocument& doc, const std::string& text) {
    if (const TransformSpec* named = doc.find_transform(text)) return *named;
    return parse_transform_spec(text, doc.num_indep());
}

const Candidate& need_candidate(const SystemDocument& doc, const std::string& name) {
    const Candidate* c = doc.find_candidate(name);
    if (!c) throw Error("no candidate named '" + name + "'");
    return *c;
}

std::string alpha_label(const std::vector<unsigned long>& alpha) {
    if (alpha.size() == 1) return std::to_string(alpha[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i)
        s += (i ? "," : "") + std::to_string(alpha[i]);
    return s + ")";
}

std::string trop_terms_label(const std::vector<TropValue>& terms) {
    std::string s = "[";
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? ", " : "") + terms[i].str();
    return s + "]";
}

int cmd_tropicalize(const SystemDocument& doc, unsigned long k, bool json, std::ostream& out) {
    Json jroot = Json::array();
    auto alphas = derivative_multi_indices(doc.num_indep(), k);
    for (std::size_t i = 0; i < doc.gens.size(); ++i) {
        for (const auto& alpha : alphas) {
            DiffPolynomial d = total_derivative_multi(doc.gens[i], alpha);
            TropDiffPolynomial tf = tropicalize(d, doc.valuation);
            if (json) {
                jroot.push_back(Json{{"name", doc.gen_names[i]},
                                     {"alpha", alpha},
                                     {"trop", trop_poly_json(tf, doc.indep_names, doc.dep_names)}});
                continue;
            }
            unsigned long total = 0;
            for (unsigned long a : alpha) total += a;
            std::string label = doc.gen_names[i];
            if (total > 0) label = "d^" + alpha_label(alpha) + " " + label;
            out << label << ": " << tf.str(doc.indep_names, doc.dep_names) << "\n";
        }
    }
    if (json) out << jroot.dump(2) << "\n";
    return 0;
}

std::vector<std::string> transformed_dep_names(const SystemDocument& doc) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < doc.num_dep(); ++i)
        names.push_back(doc.num_dep() == 1 ? "z" : "z" + std::to_string(i + 1));
    std::set<std::string> taken(doc.indep_names.begin(), doc.indep_names.end());
    taken.insert(doc.gen_names.begin(), doc.gen_names.end());
    for (const Candidate& c : doc.candidates) taken.insert(c.name);
    for (const std::string& name : names)
        if (taken.count(name)) return doc.dep_names; // keep the original names
    return names;
}

int cmd_transform(const SystemDocument& doc, const std::string& spec_text, bool json,
                  std::ostream& out) {
    TransformSpec spec = resolve_spec(doc, spec_text);
    TransformedSystem ts = transform_system(spec, doc.gens);
    SystemDocument ndoc;
    ndoc.indep_names = doc.indep_names;
    ndoc.dep_names = transformed_dep_names(doc);
    ndoc.shape = ts.shape;
    ndoc.field_radicand = doc.field_radicand;
    ndoc.valuation = doc.valuation;
    ndoc.gen_names = doc.gen_names;
    ndoc.gens = ts.gens;
    for (const Candidate& c : doc.candidates) {
        if (c.kind == CandidateKind::LogSupport) continue; // transforms act on power series
        Candidate nc;
        nc.name = c.name;
        nc.kind = c.kind;
        for (const TruncatedSeries& s : c.series) {
            TruncatedSeries t = transform_series(spec, s);
            nc.series.emplace_back(ndoc.shape, t.entries(), t.bound());
        }
        for (const SupportSet& s : c.supports) {
            SupportSet t = transform_support(spec, s);
            nc.supports.emplace_back(ndoc.shape, t.points(), t.bound());
        }
        ndoc.candidates.push_back(std::move(nc));
    }
    if (json)
        out << document_json(ndoc).dump(2) << "\n";
    else
        out << print_document(ndoc);
    return 0;
}

int cmd_check(const SystemDocument& doc, const std::string& cand,
              const std::optional<Rational>& order_flag, bool json, std::ostream& out) {
    const Candidate& c = need_candidate(doc, cand);
    if (c.kind != CandidateKind::Series)
        throw Error("candidate '" + cand + "' is not a series candidate");
    ExtRational order; // nullopt: check at the candidate's own precision
    if (order_flag)
        order = *order_flag;
    else if (const char* env = std::getenv("TROPDIFF_DEFAULT_BOUND"))
        order = parse_rational(env);
    bool ok = is_solution_mod_bound(doc.gens, c.series, order);
    if (json) {
        out << Json{{"command", "check"},
                    {"candidate", cand},
                    {"order", ext_json(order)},
                    {"pass", ok}}
                   .dump(2)
            << "\n";
    } else {
        out << (ok ? "PASS" : "FAIL") << ": substitution oracle for '" << cand << "'";
        if (order) out << " to order " << rational_str(*order);
        out << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_trop_check(const SystemDocument& doc, const std::string& cand, unsigned long k,
                   bool logs, bool json, std::ostream& out) {
    const Candidate& c = need_candidate(doc, cand);
    bool pass = false;
    Json jfail = nullptr;
    std::string text_fail;
    if (logs) {
        if (c.kind != CandidateKind::LogSupport)
            throw Error("--logs needs a logsupport candidate");
        auto failure = log_check_detail(doc.gens, c.log_supports, k, doc.valuation);
        pass = !failure;
        if (failure) {
            Json terms = Json::array();
            for (const TropValue& t : failure->terms) terms.push_back(trop_value_json(t));
            jfail = Json{{"generator", doc.gen_names[failure->generator]},
                         {"derivative", failure->k},
                         {"terms", std::move(terms)}};
            text_fail = "generator " + doc.gen_names[failure->generator] + ", derivative " +
                        std::to_string(failure->k) + ", values " +
                        trop_terms_label(failure->terms);
        }
    } else {
        std::vector<SupportSet> supports;
        if (c.kind == CandidateKind::Support) {
            supports = c.supports;
        } else if (c.kind == CandidateKind::Series) {
            for (const TruncatedSeries& s : c.series) supports.push_back(support(s));
        } else {
            throw Error("candidate '" + cand + "' has no power-series support; use --logs");
        }
        auto failure = trop_check_detail(doc.gens, supports, k, doc.valuation);
        pass = !failure;
        if (failure) {
            Json terms = Json::array();
            for (const TropValue& t : failure->terms) terms.push_back(trop_value_json(t));
            jfail = Json{{"generator", doc.gen_names[failure->generator]},
                         {"alpha", failure->alpha},
                         {"terms", std::move(terms)}};
            text_fail = "generator " + doc.gen_names[failure->generator] + ", derivative d^" +
                        alpha_label(failure->alpha) + ", values " +
                        trop_terms_label(failure->terms);
        }
    }
    if (json) {
        out << Json{{"command", "trop-check"},
                    {"candidate", cand},
                    {"deriv_bound", k},
                    {"mode", logs ? "logs" : "power"},
                    {"pass", pass},
                    {"failure", std::move(jfail)}}
                   .dump(2)
            << "\n";
    } else if (pass) {
        out << "PASS: '" << cand << "' not refuted up to derivative order " << k << "\n";
    } else {
        out << "FAIL: " << text_fail << "\n";
    }
    return pass ? 0 : 1;
}

int cmd_search(const SystemDocument& doc, unsigned long window, unsigned long k, bool json,
               std::ostream& out) {
    auto sols = search_boolean_solutions(doc.gens, window, k, doc.valuation);
    if (json) {
        Json xs = Json::array();
        for (const SupportSet& s : sols) xs.push_back(support_json(s));
        out << Json{{"command", "search"},
                    {"window", window},
                    {"deriv_bound", k},
                    {"solutions", std::move(xs)}}
                   .dump(2)
            << "\n";
        return 0;
    }
    if (sols.empty()) {
        out << "no boolean support solutions with exponents in {0,...," << window << "}\n";
    } else {
        for (const SupportSet& s : sols) out << s.str() << "\n";
    }
    return 0;
}

int cmd_roundtrip(const SystemDocument& doc, const std::string& spec_text,
                  const std::optional<std::string>& cand, bool json, std::ostream& out) {
    TransformSpec spec = resolve_spec(doc, spec_text);
    std::vector<const Candidate*> picks;
    if (cand) {
        const Candidate& c = need_candidate(doc, *cand);
        if (c.kind != CandidateKind::Series)
            throw Error("candidate '" + *cand + "' is not a series candidate");
        picks.push_back(&c);
    } else {
        for (const Candidate& c : doc.candidates)
            if (c.kind == CandidateKind::Series) picks.push_back(&c);
    }
    if (picks.empty()) throw Error("no series candidate to round-trip");
    bool all_ok = true;
    Json results = Json::array();
    for (const Candidate* c : picks) {
        for (std::size_t i = 0; i < c->series.size(); ++i) {
            const TruncatedSeries& s = c->series[i];
            bool eq = support_equivariance_check(spec, s);
            SupportSet sup = support(s);
            SupportSet fwd = transform_support(spec, sup);
            SupportSet back = inverse_transform_support(spec, fwd);
            bool inv = back.points() == sup.points() && back.bound() == sup.bound() &&
                       back.shape().weight == sup.shape().weight;
            all_ok = all_ok && eq && inv;
            if (json) {
                results.push_back(Json{{"candidate", c->name},
                                       {"component", i},
                                       {"equivariance", eq},
                                       {"inverse_identity", inv}});
            } else {
                out << (eq && inv ? "PASS" : "FAIL") << ": " << c->name << "[" << i
                    << "] equivariance=" << (eq ? "yes" : "no")
                    << " inverse=" << (inv ? "yes" : "no") << "\n";
            }
        }
    }
    if (json)
        out << Json{{"command", "roundtrip"}, {"pass", all_ok}, {"results", std::move(results)}}
                   .dump(2)
            << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact arithmetic for tropical differential systems"};
    app.require_subcommand(1);

    std::string file, candidate, spec, order;
    unsigned long deriv_bound = 0, window = 0;
    bool json = false, logs = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "system file")->required();
        sub->add_flag("--json", json, "machine-readable output");
    };

    CLI::App* s_trop = app.add_subcommand(
        "tropicalize", "print the coefficientwise valuation of each generator");
    add_common(s_trop);
    s_trop->add_option("--deriv-bound", deriv_bound,
                       "also tropicalize total derivatives up to this order");

    CLI::App* s_transform =
        app.add_subcommand("transform", "rewrite the system in transformed coordinates");
    add_common(s_transform);
    s_transform->add_option("--spec", spec, "transform spec text or a name from the file")
        ->required();

    CLI::App* s_check =
        app.add_subcommand("check", "substitution oracle for a series candidate");
    add_common(s_check);
    s_check->add_option("--candidate", candidate, "candidate name")->required();
    s_check->add_option(
        "--order", order,
        "truncation order (rational); defaults to TROPDIFF_DEFAULT_BOUND or the candidate's own bound");

    CLI::App* s_tcheck =
        app.add_subcommand("trop-check", "tropical vanishing test for a candidate");
    add_common(s_tcheck);
    s_tcheck->add_option("--candidate", candidate, "candidate name")->required();
    s_tcheck->add_option("--deriv-bound", deriv_bound, "test derivatives up to this order");
    s_tcheck->add_flag("--logs", logs, "candidate is a logsupport (t / log t monomials)");

    CLI::App* s_search =
        app.add_subcommand("search", "enumerate boolean support solutions in a window");
    add_common(s_search);
    s_search->add_option("--window", window, "largest exponent in the search window")
        ->required();
    s_search->add_option("--deriv-bound", deriv_bound, "test derivatives up to this order");

    CLI::App* s_round =
        app.add_subcommand("roundtrip", "support equivariance and inverse checks for a transform");
    add_common(s_round);
    s_round->add_option("--spec", spec, "transform spec text or a name from the file")
        ->required();
    s_round->add_option("--candidate", candidate, "restrict to one series candidate");

    std::vector<const char*> argv;
    argv.push_back("tropdiff");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        SystemDocument doc = load_document(file);
        if (s_trop->parsed()) return cmd_tropicalize(doc, deriv_bound, json, out);
        if (s_transform->parsed()) return cmd_transform(doc, spec, json, out);
        if (s_check->parsed()) {
            std::optional<Rational> order_flag;
            if (s_check->count("--order")) order_flag = parse_rational(order);
            return cmd_check(doc, candidate, order_flag, json, out);
        }
        if (s_tcheck->parsed()) return cmd_trop_check(doc, candidate, deriv_bound, logs, json, out);
        if (s_search->parsed()) return cmd_search(doc, window, deriv_bound, json, out);
        if (s_round->parsed()) {
            std::optional<std::string> cname;
            if (s_round->count("--candidate")) cname = candidate;
            return cmd_roundtrip(doc, spec, cname, json, out);
        }
    } catch (const InsufficientPrecision& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 3;
    } catch (const IndeterminateBelowBound& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace tropdiff
