#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "tropdiff/document.hpp"
#include "tropdiff/errors.hpp"

namespace tropdiff {

namespace {

struct Token {
    enum Kind { End, Ident, Nat, Punct, Str } kind = End;
    std::string text;
    int line = 1, col = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(const std::string& src) {
    static const std::string punct = ";,=+-*^(){}[]'/";
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') { // comment to end of line
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (ident_start(c)) {
            t.kind = Token::Ident;
            while (i < src.size() && ident_char(src[i])) {
                t.text += src[i++];
                ++col;
            }
        } else if (digit(c)) {
            t.kind = Token::Nat;
            while (i < src.size() && digit(src[i])) {
                t.text += src[i++];
                ++col;
            }
        } else if (c == '"') {
            t.kind = Token::Str;
            ++i;
            ++col;
            while (i < src.size() && src[i] != '"' && src[i] != '\n') {
                t.text += src[i++];
                ++col;
            }
            if (i >= src.size() || src[i] != '"')
                throw ParseError("unterminated string", t.line, t.col);
            ++i;
            ++col;
        } else if (punct.find(c) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = c;
            ++i;
            ++col;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.line = line;
    end.col = col;
    out.push_back(std::move(end));
    return out;
}

const std::set<std::string>& reserved() {
    static const std::set<std::string> words = {
        "indep",     "dep",    "grid",  "weight", "field",    "valuation",
        "candidate", "transform", "series", "support", "logsupport", "bound",
        "sqrt",      "D",      "rational", "trivial"};
    return words;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    SystemDocument parse() {
        while (peek().kind != Token::End) parse_statement();
        finalize_shape(peek());
        if (doc_.gens.empty()) fail("no generators declared", peek());
        return std::move(doc_);
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    SystemDocument doc_;
    bool body_started_ = false;
    bool shape_final_ = false;
    std::set<std::string> decls_seen_;
    std::optional<std::vector<unsigned long>> grid_decl_;
    std::optional<std::vector<Rational>> weight_decl_;
    Token grid_tok_, weight_tok_;
    std::set<std::string> top_names_;

    std::size_t m() const { return doc_.indep_names.size(); }
    std::size_t n() const { return doc_.dep_names.size(); }

    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(i_ + k, toks_.size() - 1)];
    }
    const Token& get() {
        const Token& t = toks_[i_];
        if (t.kind != Token::End) ++i_;
        return t;
    }
    [[noreturn]] static void fail(const std::string& msg, const Token& at) {
        throw ParseError(msg, at.line, at.col);
    }
    bool at_punct(char c) const { return peek().kind == Token::Punct && peek().text[0] == c; }
    void expect_punct(char c, const std::string& where) {
        if (!at_punct(c)) fail(std::string("expected '") + c + "' " + where, peek());
        ++i_;
    }
    bool at_ident(const char* s) const {
        return peek().kind == Token::Ident && peek().text == s;
    }

    std::optional<std::size_t> indep_index(const std::string& name) const {
        auto it = std::find(doc_.indep_names.begin(), doc_.indep_names.end(), name);
        if (it == doc_.indep_names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - doc_.indep_names.begin());
    }
    std::optional<std::size_t> dep_index(const std::string& name) const {
        auto it = std::find(doc_.dep_names.begin(), doc_.dep_names.end(), name);
        if (it == doc_.dep_names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - doc_.dep_names.begin());
    }

    // ---- statements ----

    void parse_statement() {
        const Token& t = peek();
        if (t.kind != Token::Ident) fail("expected a statement", t);
        const std::string& kw = t.text;
        if (kw == "indep" || kw == "dep" || kw == "grid" || kw == "weight" || kw == "field" ||
            kw == "valuation") {
            if (body_started_)
                fail("declarations must precede generators, candidates and transforms", t);
            if (!decls_seen_.insert(kw).second) fail("duplicate '" + kw + "' declaration", t);
            if (kw == "indep")
                parse_indep();
            else if (kw == "dep")
                parse_dep();
            else if (kw == "grid")
                parse_grid();
            else if (kw == "weight")
                parse_weight();
            else if (kw == "field")
                parse_field();
            else
                parse_valuation();
            return;
        }
        begin_body(t);
        if (kw == "candidate")
            parse_candidate();
        else if (kw == "transform")
            parse_transform_stmt();
        else
            parse_generator();
    }

    void begin_body(const Token& at) {
        body_started_ = true;
        finalize_shape(at);
    }

    void finalize_shape(const Token& at) {
        if (shape_final_) return;
        for (const std::string& name : doc_.indep_names)
            if (dep_index(name))
                fail("variable '" + name + "' is both independent and dependent", at);
        std::vector<unsigned long> grid =
            grid_decl_ ? *grid_decl_ : std::vector<unsigned long>(m(), 1);
        std::vector<Rational> weight =
            weight_decl_ ? *weight_decl_ : std::vector<Rational>(m(), Rational(1));
        if (grid.size() != m())
            fail("grid needs one entry per independent variable", grid_tok_);
        if (weight.size() != m())
            fail("weight needs one entry per independent variable", weight_tok_);
        try {
            doc_.shape = SeriesShape(m(), std::move(grid), std::move(weight));
        } catch (const Error& e) {
            fail(e.what(), at);
        }
        shape_final_ = true;
    }

    std::vector<std::string> parse_var_names(const char* what) {
        std::vector<std::string> out;
        while (true) {
            const Token& t = peek();
            if (t.kind != Token::Ident)
                fail(std::string("expected a variable name after '") + what + "'", t);
            if (reserved().count(t.text)) fail("'" + t.text + "' is a reserved word", t);
            if (std::find(out.begin(), out.end(), t.text) != out.end())
                fail("duplicate variable name '" + t.text + "'", t);
            out.push_back(t.text);
            ++i_;
            if (at_punct(',')) {
                ++i_;
                continue;
            }
            break;
        }
        expect_punct(';', "to end the declaration");
        return out;
    }

    void parse_indep() {
        get();
        doc_.indep_names = parse_var_names("indep");
    }

    void parse_dep() {
        get();
        doc_.dep_names = parse_var_names("dep");
    }

    void parse_grid() {
        get();
        grid_tok_ = peek();
        std::vector<unsigned long> g;
        while (true) {
            const Token& t = peek();
            if (t.kind != Token::Nat) fail("grid entries are positive integers", t);
            unsigned long v = nat_value(t, "grid entry");
            if (v == 0) fail("grid entries are positive integers", t);
            g.push_back(v);
            ++i_;
            if (at_punct(',')) {
                ++i_;
                continue;
            }
            break;
        }
        expect_punct(';', "to end the declaration");
        grid_decl_ = std::move(g);
    }

    void parse_weight() {
        get();
        weight_tok_ = peek();
        std::vector<Rational> w;
        while (true) {
            const Token& at = peek();
            Rational r = parse_signed_rational("weight entry");
            if (!(r > 0)) fail("weight entries are positive rationals", at);
            w.push_back(std::move(r));
            if (at_punct(',')) {
                ++i_;
                continue;
            }
            break;
        }
        expect_punct(';', "to end the declaration");
        weight_decl_ = std::move(w);
    }

    void parse_field() {
        get();
        if (at_ident("rational")) {
            ++i_;
            doc_.field_radicand = 0;
        } else if (at_ident("sqrt")) {
            ++i_;
            expect_punct('(', "after 'sqrt'");
            const Token& t = peek();
            if (t.kind != Token::Nat) fail("expected the radicand", t);
            unsigned long d = nat_value(t, "radicand");
            if (d < 2) fail("field radicand must be at least 2", t);
            if (mpz_perfect_square_p(Integer(d).get_mpz_t()))
                fail("field radicand must not be a perfect square", t);
            ++i_;
            expect_punct(')', "after the radicand");
            doc_.field_radicand = d;
        } else {
            fail("expected 'rational' or 'sqrt(D)'", peek());
        }
        expect_punct(';', "to end the declaration");
    }

    void parse_valuation() {
        get();
        if (at_ident("trivial")) {
            ++i_;
            doc_.valuation = CoeffValuation::trivial();
        } else if (at_ident("p")) {
            ++i_;
            expect_punct('-', "in 'p-adic'");
            if (!at_ident("adic")) fail("expected 'adic'", peek());
            ++i_;
            expect_punct('(', "after 'p-adic'");
            const Token& t = peek();
            if (t.kind != Token::Nat) fail("expected the prime", t);
            unsigned long p = nat_value(t, "prime");
            if (mpz_probab_prime_p(Integer(p).get_mpz_t(), 40) == 0)
                fail("p-adic valuation needs a prime", t);
            ++i_;
            expect_punct(')', "after the prime");
            doc_.valuation = CoeffValuation::p_adic(p);
        } else {
            fail("expected 'trivial' or 'p-adic(p)'", peek());
        }
        expect_punct(';', "to end the declaration");
    }

    Token take_top_name(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Ident) fail(std::string("expected a name for the ") + what, t);
        if (reserved().count(t.text)) fail("'" + t.text + "' is a reserved word", t);
        if (indep_index(t.text) || dep_index(t.text))
            fail("'" + t.text + "' already names a variable", t);
        if (!top_names_.insert(t.text).second) fail("duplicate name '" + t.text + "'", t);
        Token copy = t;
        ++i_;
        return copy;
    }

    void parse_generator() {
        Token name = take_top_name("generator");
        expect_punct('=', "after the generator name");
        DiffPolynomial p = parse_poly();
        expect_punct(';', "to end the generator");
        doc_.gen_names.push_back(name.text);
        doc_.gens.push_back(std::move(p));
    }

    void parse_candidate() {
        get(); // 'candidate'
        Token name = take_top_name("candidate");
        Candidate c;
        c.name = name.text;
        const Token& kind = peek();
        if (at_ident("series")) {
            ++i_;
            c.kind = CandidateKind::Series;
            while (true) {
                c.series.push_back(parse_candidate_series());
                if (at_punct(',')) {
                    ++i_;
                    continue;
                }
                break;
            }
        } else if (at_ident("support")) {
            ++i_;
            c.kind = CandidateKind::Support;
            while (true) {
                c.supports.push_back(parse_support_set());
                if (at_punct(',')) {
                    ++i_;
                    continue;
                }
                break;
            }
        } else if (at_ident("logsupport")) {
            ++i_;
            c.kind = CandidateKind::LogSupport;
            while (true) {
                c.log_supports.push_back(parse_log_support());
                if (at_punct(',')) {
                    ++i_;
                    continue;
                }
                break;
            }
        } else {
            fail("expected 'series', 'support' or 'logsupport'", kind);
        }
        if (at_ident("bound")) {
            const Token& bt = peek();
            ++i_;
            Rational b = parse_signed_rational("bound");
            if (c.kind == CandidateKind::LogSupport)
                fail("bound does not apply to logsupport candidates", bt);
            ExtRational eb(b);
            for (TruncatedSeries& s : c.series) s = s.truncated_to(eb);
            for (SupportSet& s : c.supports) s = s.truncated_to(eb);
        }
        expect_punct(';', "to end the candidate");
        std::size_t count = c.kind == CandidateKind::Series      ? c.series.size()
                            : c.kind == CandidateKind::Support   ? c.supports.size()
                                                                 : c.log_supports.size();
        if (count != n())
            fail("candidate needs one component per dependent variable (expected " +
                     std::to_string(n()) + ", got " + std::to_string(count) + ")",
                 name);
        doc_.candidates.push_back(std::move(c));
    }

    void parse_transform_stmt() {
        get(); // 'transform'
        Token name = take_top_name("transform");
        const Token& spec_tok = peek();
        if (spec_tok.kind != Token::Str) fail("expected a quoted transform spec", spec_tok);
        TransformSpec spec;
        try {
            spec = parse_transform_spec(spec_tok.text, m());
        } catch (const Error& e) {
            fail(e.what(), spec_tok);
        }
        ++i_;
        expect_punct(';', "to end the transform");
        doc_.transforms.push_back(NamedTransform{name.text, std::move(spec)});
    }

    // ---- values ----

    static unsigned long nat_value(const Token& t, const char* what) {
        Integer v(t.text);
        if (!mpz_fits_ulong_p(v.get_mpz_t()))
            fail(std::string(what) + " out of range", t);
        return mpz_get_ui(v.get_mpz_t());
    }

    unsigned long parse_nat(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Nat) fail(std::string("expected ") + what, t);
        unsigned long v = nat_value(t, what);
        ++i_;
        return v;
    }

    Rational parse_rational_tok(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Nat) fail(std::string("expected ") + what, t);
        Integer num(t.text);
        ++i_;
        if (at_punct('/')) {
            ++i_;
            const Token& d = peek();
            if (d.kind != Token::Nat) fail("expected an integer after '/'", d);
            Integer den(d.text);
            if (den == 0) fail("zero denominator", d);
            ++i_;
            return Rational(num) / Rational(den);
        }
        return Rational(num);
    }

    Rational parse_signed_rational(const char* what) {
        bool neg = false;
        if (at_punct('-')) {
            ++i_;
            neg = true;
        }
        Rational r = parse_rational_tok(what);
        if (neg) r = -r;
        return r;
    }

    // after '^': rational, optionally negative, optionally parenthesized
    Rational parse_exponent_value() {
        if (at_punct('(')) {
            ++i_;
            Rational r = parse_signed_rational("an exponent");
            expect_punct(')', "after the exponent");
            return r;
        }
        return parse_signed_rational("an exponent");
    }

    // ---- expressions ----

    DiffPolynomial parse_poly() {
        bool neg = false;
        if (at_punct('-')) {
            ++i_;
            neg = true;
        }
        DiffPolynomial acc = parse_term();
        if (neg) acc = -acc;
        while (at_punct('+') || at_punct('-')) {
            bool minus = peek().text[0] == '-';
            ++i_;
            DiffPolynomial t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    DiffPolynomial parse_term() {
        DiffPolynomial acc = parse_factor();
        while (at_punct('*')) {
            ++i_;
            acc = acc * parse_factor();
        }
        return acc;
    }

    DiffPolynomial maybe_nat_power(DiffPolynomial p) {
        if (at_punct('^')) {
            ++i_;
            p = p.pow(parse_nat("a nonnegative integer exponent"));
        }
        return p;
    }

    DiffPolynomial parse_factor() {
        const Token& t = peek();
        if (t.kind == Token::Nat) {
            Rational r = parse_rational_tok("a number");
            return DiffPolynomial::from_series(
                n(), TruncatedSeries::constant(doc_.shape, Scalar(std::move(r))));
        }
        if (at_punct('(')) {
            ++i_;
            DiffPolynomial p = parse_poly();
            expect_punct(')', "to close the parenthesis");
            return maybe_nat_power(std::move(p));
        }
        if (t.kind == Token::Ident) {
            if (t.text == "sqrt" && peek(1).kind == Token::Punct && peek(1).text == "(") {
                Token at = get();
                ++i_; // '('
                unsigned long d = parse_nat("the radicand");
                expect_punct(')', "after the radicand");
                if (d == 0 || d != doc_.field_radicand)
                    fail("sqrt(" + std::to_string(d) +
                             ") needs a matching 'field sqrt(...);' declaration",
                         at);
                return maybe_nat_power(DiffPolynomial::from_series(
                    n(), TruncatedSeries::constant(doc_.shape, Scalar::sqrt_of(d))));
            }
            if (t.text == "D" && peek(1).kind == Token::Punct && peek(1).text == "[")
                return parse_jet_bracket();
            if (auto j = indep_index(t.text)) {
                Token at = get();
                Rational e(1);
                if (at_punct('^')) {
                    ++i_;
                    e = parse_exponent_value();
                }
                Exponent ex = Exponent::zero(m());
                ex[*j] = std::move(e);
                try {
                    doc_.shape.check_exponent(ex);
                } catch (const Error& err) {
                    fail(err.what(), at);
                }
                return DiffPolynomial::from_series(
                    n(), TruncatedSeries::monomial(doc_.shape, Scalar(1), ex));
            }
            if (auto v = dep_index(t.text)) {
                Token at = get();
                unsigned long quotes = 0;
                while (at_punct('\'')) {
                    ++i_;
                    ++quotes;
                }
                if (quotes > 0 && m() != 1)
                    fail("prime derivatives need a single independent variable; use D[" +
                             at.text + ";...]",
                         at);
                JetVar jv(*v, std::vector<unsigned long>(m(), 0));
                if (quotes > 0) jv.deriv[0] = quotes;
                return maybe_nat_power(DiffPolynomial::from_jet(n(), doc_.shape, jv));
            }
            fail("unknown variable '" + t.text + "'", t);
        }
        fail("expected a number, variable, jet or parenthesized expression", t);
    }

    DiffPolynomial parse_jet_bracket() {
        Token dtok = get(); // 'D'
        ++i_;               // '['
        const Token& vt = peek();
        if (vt.kind != Token::Ident) fail("expected a dependent variable in D[...]", vt);
        auto v = dep_index(vt.text);
        if (!v) fail("unknown dependent variable '" + vt.text + "'", vt);
        ++i_;
        std::vector<unsigned long> deriv(m(), 0);
        bool any = false;
        while (at_punct(';')) {
            ++i_;
            const Token& tt = peek();
            if (tt.kind != Token::Ident) fail("expected an independent variable in D[...]", tt);
            auto j = indep_index(tt.text);
            if (!j) fail("unknown independent variable '" + tt.text + "'", tt);
            ++i_;
            unsigned long p = 1;
            if (at_punct('^')) {
                ++i_;
                p = parse_nat("a derivative order");
            }
            deriv[*j] += p;
            any = true;
        }
        expect_punct(']', "to close D[...]");
        if (!any)
            fail("D[...] needs at least one derivative variable; write the plain variable instead",
                 dtok);
        return maybe_nat_power(
            DiffPolynomial::from_jet(n(), doc_.shape, JetVar(*v, std::move(deriv))));
    }

    // ---- candidate payloads ----

    TruncatedSeries parse_candidate_series() {
        const Token& start = peek();
        DiffPolynomial p = parse_poly();
        for (const auto& [mono, c] : p.terms()) {
            (void)c;
            if (!mono.is_unit())
                fail("candidate series must not involve jet variables", start);
        }
        if (p.terms().empty()) return TruncatedSeries(doc_.shape);
        return p.terms().begin()->second;
    }

    Exponent parse_point() {
        if (m() == 1 && !at_punct('(')) {
            Rational r = parse_signed_rational("an exponent");
            return Exponent({std::move(r)});
        }
        expect_punct('(', "to open an exponent tuple");
        std::vector<Rational> comps;
        while (true) {
            comps.push_back(parse_signed_rational("an exponent"));
            if (at_punct(',')) {
                ++i_;
                continue;
            }
            break;
        }
        expect_punct(')', "to close the exponent tuple");
        if (comps.size() != m())
            fail("exponent tuple needs " + std::to_string(m()) + " components", peek());
        return Exponent(std::move(comps));
    }

    SupportSet parse_support_set() {
        expect_punct('{', "to open the support");
        std::set<Exponent> pts;
        if (!at_punct('}')) {
            while (true) {
                const Token& at = peek();
                Exponent e = parse_point();
                try {
                    doc_.shape.check_exponent(e);
                } catch (const Error& err) {
                    fail(err.what(), at);
                }
                pts.insert(std::move(e));
                if (at_punct(',')) {
                    ++i_;
                    continue;
                }
                break;
            }
        }
        expect_punct('}', "to close the support");
        return SupportSet(doc_.shape, std::move(pts), std::nullopt);
    }

    long parse_signed_integer(const char* what) {
        const Token& at = peek();
        Rational r = parse_signed_rational(what);
        if (!is_integer(r)) fail(std::string(what) + " must be an integer", at);
        Integer num = r.get_num();
        if (!mpz_fits_slong_p(num.get_mpz_t())) fail(std::string(what) + " out of range", at);
        return mpz_get_si(num.get_mpz_t());
    }

    BoolTransseries parse_log_support() {
        expect_punct('{', "to open the log support");
        std::set<LogMonomial> pts;
        if (!at_punct('}')) {
            while (true) {
                expect_punct('(', "to open a (a,b) pair");
                long a = parse_signed_integer("a log exponent");
                expect_punct(',', "between the pair components");
                long b = parse_signed_integer("a log exponent");
                expect_punct(')', "to close the pair");
                pts.insert(LogMonomial(a, b));
                if (at_punct(',')) {
                    ++i_;
                    continue;
                }
                break;
            }
        }
        expect_punct('}', "to close the log support");
        return BoolTransseries(std::move(pts));
    }
};

} // namespace

SystemDocument parse_document(const std::string& text) { return Parser(text).parse(); }

} // namespace tropdiff
