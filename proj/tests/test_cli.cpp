#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tropdiff/cli.hpp"

namespace {

struct Run {
    int rc;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = tropdiff::run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("tropicalize prints one line per generator and derivative") {
    Run r = cli({"tropicalize", "systems/counterexample.sys", "--deriv-bound", "1"});
    CHECK(r.rc == 0);
    CHECK(r.out == "F: (1,0)*x' + (0,0)*x + (1,0)\n"
                   "d^1 F: (1,0)*x'' + (0,0)\n");
    CHECK(r.err.empty());

    Run p = cli({"tropicalize", "systems/padic.sys"});
    CHECK(p.rc == 0);
    CHECK(p.out == "F: (0,0)*x' + (0,1)*x\n");
}

TEST_CASE("substitution oracle exit codes") {
    Run pass = cli({"check", "systems/exp.sys", "--candidate", "e"});
    CHECK(pass.rc == 0);
    CHECK(pass.out == "PASS: substitution oracle for 'e'\n");

    Run at4 = cli({"check", "systems/exp.sys", "--candidate", "e", "--order", "4"});
    CHECK(at4.rc == 0);
    CHECK(at4.out == "PASS: substitution oracle for 'e' to order 4\n");

    // asking beyond the candidate's precision is indeterminate, not a pass
    Run deep = cli({"check", "systems/exp.sys", "--candidate", "e", "--order", "9"});
    CHECK(deep.rc == 3);
    CHECK(deep.out.empty());
    CHECK(deep.err == "indeterminate: residual only known below 5; raise the candidate's precision\n");

    Run padic = cli({"check", "systems/padic.sys", "--candidate", "g"});
    CHECK(padic.rc == 0);

    Run wrong_kind = cli({"check", "systems/counterexample.sys", "--candidate", "P"});
    CHECK(wrong_kind.rc == 2);
    CHECK(wrong_kind.err == "error: candidate 'P' is not a series candidate\n");

    Run missing = cli({"check", "systems/exp.sys", "--candidate", "nope"});
    CHECK(missing.rc == 2);
    CHECK(missing.err == "error: no candidate named 'nope'\n");
}

TEST_CASE("the environment can set a default truncation order") {
    setenv("TROPDIFF_DEFAULT_BOUND", "4", 1);
    Run ok = cli({"check", "systems/exp.sys", "--candidate", "e"});
    CHECK(ok.rc == 0);
    CHECK(ok.out == "PASS: substitution oracle for 'e' to order 4\n");

    setenv("TROPDIFF_DEFAULT_BOUND", "9", 1);
    Run deep = cli({"check", "systems/exp.sys", "--candidate", "e"});
    CHECK(deep.rc == 3);

    // an explicit flag wins over the environment
    Run flag = cli({"check", "systems/exp.sys", "--candidate", "e", "--order", "4"});
    CHECK(flag.rc == 0);
    unsetenv("TROPDIFF_DEFAULT_BOUND");
}

TEST_CASE("tropical vanishing check over power supports and log supports") {
    Run fail = cli({"trop-check", "systems/counterexample.sys", "--candidate", "P",
                    "--deriv-bound", "1"});
    CHECK(fail.rc == 1);
    CHECK(fail.out == "FAIL: generator F, derivative d^1, values [inf, (0,0)]\n");

    Run k0 = cli({"trop-check", "systems/counterexample.sys", "--candidate", "P"});
    CHECK(k0.rc == 0); // refutation needs the first derivative

    for (const char* name : {"A", "B", "C"}) {
        Run logs = cli({"trop-check", "systems/counterexample.sys", "--candidate", name,
                        "--logs", "--deriv-bound", "8"});
        CAPTURE(name);
        CHECK(logs.rc == 0);
        CHECK(logs.out == std::string("PASS: '") + name +
                              "' not refuted up to derivative order 8\n");
    }

    Run mixed = cli({"trop-check", "systems/counterexample.sys", "--candidate", "A"});
    CHECK(mixed.rc == 2);
    CHECK(mixed.err == "error: candidate 'A' has no power-series support; use --logs\n");

    Run mixed2 = cli({"trop-check", "systems/counterexample.sys", "--candidate", "P", "--logs"});
    CHECK(mixed2.rc == 2);
    CHECK(mixed2.err == "error: --logs needs a logsupport candidate\n");

    Run series = cli({"trop-check", "systems/sqrt2t.sys", "--candidate", "phi",
                      "--deriv-bound", "3"});
    CHECK(series.rc == 0);
}

TEST_CASE("window search lists surviving boolean supports") {
    Run none = cli({"search", "systems/counterexample.sys", "--window", "10",
                    "--deriv-bound", "8"});
    CHECK(none.rc == 0);
    CHECK(none.out == "no boolean support solutions with exponents in {0,...,10}\n");

    Run some = cli({"search", "systems/exp.sys", "--window", "1"});
    CHECK(some.rc == 0);
    CHECK(some.out == "{}\n{0, 1}\n");
}

TEST_CASE("transform rewrites the document in the new coordinates") {
    Run r = cli({"transform", "systems/sqrt2t.sys", "--spec", "ram2"});
    CHECK(r.rc == 0);
    CHECK(r.out == "indep t;\n"
                   "dep z;\n"
                   "grid 1;\n"
                   "weight 1/2;\n"
                   "field sqrt(2);\n"
                   "valuation trivial;\n"
                   "\n"
                   "F = 1/2*z*z' - t;\n"
                   "\n"
                   "candidate phi series sqrt(2)*t;\n");

    // a literal spec text works in place of a name
    Run lit = cli({"transform", "systems/sqrt2t.sys", "--spec", "power 2 ; shift 0"});
    CHECK(lit.rc == 0);
    CHECK(lit.out == r.out);
}

TEST_CASE("roundtrip reports equivariance and inverse per candidate component") {
    Run r = cli({"roundtrip", "systems/sqrt-sum.sys", "--spec", "flatten"});
    CHECK(r.rc == 0);
    CHECK(r.out == "PASS: phi[0] equivariance=yes inverse=yes\n");

    Run named = cli({"roundtrip", "systems/sqrt-sum.sys", "--spec", "flatten",
                     "--candidate", "phi"});
    CHECK(named.rc == 0);
}

TEST_CASE("parse failures surface with their source position") {
    std::filesystem::path bad =
        write_temp("tropdiff-bad.sys", "indep t;\ndep x;\nF = x2 + t;\n");
    Run r = cli({"tropicalize", bad.string()});
    CHECK(r.rc == 2);
    CHECK(r.err == "error: parse error at 3:5: unknown variable 'x2'\n");
    std::filesystem::remove(bad);

    Run gone = cli({"tropicalize", "systems/does-not-exist.sys"});
    CHECK(gone.rc == 2);
    CHECK(gone.err.find("error:") == 0);
}

TEST_CASE("substitution failures exit nonzero") {
    std::filesystem::path f = write_temp(
        "tropdiff-wrong.sys", "F = x' - x;\ncandidate bad series 1 + 2*t bound 2;\n");
    Run r = cli({"check", f.string(), "--candidate", "bad"});
    CHECK(r.rc == 1);
    CHECK(r.out == "FAIL: substitution oracle for 'bad'\n");
    std::filesystem::remove(f);
}

TEST_CASE("usage errors exit with code 2") {
    Run none = cli({});
    CHECK(none.rc == 2);

    Run unknown = cli({"frobnicate", "systems/exp.sys"});
    CHECK(unknown.rc == 2);

    Run noarg = cli({"check", "systems/exp.sys"});
    CHECK(noarg.rc == 2); // --candidate is required

    Run help = cli({"--help"});
    CHECK(help.rc == 0);
    CHECK(help.out.find("tropicalize") != std::string::npos);
}

TEST_CASE("json output is valid and byte-stable") {
    Run a = cli({"tropicalize", "systems/padic.sys", "--json"});
    Run b = cli({"tropicalize", "systems/padic.sys", "--json"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    nlohmann::json doc = nlohmann::json::parse(a.out);
    REQUIRE(doc.is_array());
    CHECK(doc[0]["name"] == "F");
    CHECK(doc[0]["trop"][0]["monomial"] == "x'");
    CHECK(doc[0]["trop"][0]["value"][0] == "0");
    CHECK(doc[0]["trop"][1]["value"][1] == "1");

    Run t1 = cli({"transform", "systems/sqrt-sum.sys", "--spec", "flatten", "--json"});
    Run t2 = cli({"transform", "systems/sqrt-sum.sys", "--spec", "flatten", "--json"});
    CHECK(t1.rc == 0);
    CHECK(t1.out == t2.out);
    nlohmann::json tdoc = nlohmann::json::parse(t1.out);
    CHECK(tdoc["indep"] == nlohmann::json::array({"t1", "t2"}));
    CHECK(tdoc["dep"] == nlohmann::json::array({"z"}));
    CHECK(tdoc.contains("generators"));

    Run c = cli({"check", "systems/exp.sys", "--candidate", "e", "--json"});
    CHECK(c.rc == 0);
    nlohmann::json cdoc = nlohmann::json::parse(c.out);
    CHECK(cdoc["pass"] == true);
}
