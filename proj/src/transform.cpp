#include "tropdiff/transform.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "tropdiff/errors.hpp"

namespace tropdiff {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.a_[i][i] = 1;
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw MismatchError("matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (a_[i][k] == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.a_[i][j] += a_[i][k] * o.a_[k][j];
        }
    return r;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw MismatchError("matrix/vector shape mismatch");
    std::vector<Rational> r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += a_[i][j] * v[j];
    return r;
}

QMatrix QMatrix::transposed() const {
    QMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[j][i] = a_[i][j];
    return r;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw SingularMatrixError("only square matrices invert");
    auto a = a_;
    QMatrix inv = identity(rows_);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = col;
        while (piv < rows_ && a[piv][col] == 0) ++piv;
        if (piv == rows_) throw SingularMatrixError("exponent matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv.a_[piv], inv.a_[col]);
        Rational p = a[col][col];
        for (std::size_t j = 0; j < cols_; ++j) {
            a[col][j] /= p;
            inv.a_[col][j] /= p;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t j = 0; j < cols_; ++j) {
                a[r][j] -= f * a[col][j];
                inv.a_[r][j] -= f * inv.a_[col][j];
            }
        }
    }
    return inv;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

unsigned long parse_nat(const std::string& tok, const char* what) {
    Rational r = parse_rational(trim(tok));
    if (!is_integer(r) || r <= 0)
        throw Error(std::string(what) + " must be a positive integer, got '" + trim(tok) + "'");
    Integer num = r.get_num();
    if (!mpz_fits_ulong_p(num.get_mpz_t())) throw Error(std::string(what) + " out of range");
    return mpz_get_ui(num.get_mpz_t());
}

Integer lcm_int(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

unsigned long to_ulong(const Integer& a, const char* what) {
    if (!mpz_fits_ulong_p(a.get_mpz_t())) throw Error(std::string(what) + " out of range");
    return mpz_get_ui(a.get_mpz_t());
}

// e |-> M^T (e + l), taking the already transposed matrix.
Exponent map_exponent(const QMatrix& mt, const std::vector<Rational>& l, const Exponent& e) {
    std::vector<Rational> v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = e[i] + l[i];
    return Exponent(mt.apply(v));
}

std::vector<Rational> new_weight(const QMatrix& minv, const SeriesShape& sh) {
    std::vector<Rational> w = minv.apply(sh.weight);
    for (const Rational& x : w)
        if (!(x > 0)) throw Error("transform does not keep the weight vector positive");
    return w;
}

void require_integer_point(const Exponent& e) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 || !is_integer(e[i]))
            throw OffGridResult("transformed exponent " + e.str() +
                                " is not a nonnegative integer point");
}

} // namespace

void TransformSpec::validate() const {
    std::size_t m = power.size();
    if (m == 0) throw Error("transform needs at least one variable");
    if (shift.size() != m) throw Error("transform power/shift arity mismatch");
    for (unsigned long d : power)
        if (d == 0) throw Error("ramification power must be >= 1");
    for (const BlowUp& b : blowups) {
        if (b.vars.size() < 2) throw Error("blow-up needs at least two variables");
        if (b.vars.count(b.center) == 0) throw Error("blow-up center must lie in its variable set");
        for (std::size_t v : b.vars)
            if (v >= m) throw Error("blow-up variable out of range");
    }
}

std::string TransformSpec::str() const {
    std::ostringstream os;
    os << "power ";
    for (std::size_t i = 0; i < power.size(); ++i) os << (i ? "," : "") << power[i];
    os << " ; shift ";
    for (std::size_t i = 0; i < shift.size(); ++i)
        os << (i ? "," : "") << rational_str(shift[i]);
    for (const BlowUp& b : blowups) {
        os << " ; blowup ";
        bool first = true;
        for (std::size_t v : b.vars) {
            os << (first ? "" : ",") << (v + 1);
            first = false;
        }
        os << "->" << (b.center + 1);
    }
    return os.str();
}

TransformSpec parse_transform_spec(const std::string& text, std::size_t m) {
    TransformSpec spec;
    spec.shift.assign(m, Rational(0));
    bool saw_power = false;
    for (const std::string& raw : split(text, ';')) {
        std::string clause = trim(raw);
        if (clause.empty()) continue;
        auto sp = clause.find_first_of(" \t");
        std::string kw = sp == std::string::npos ? clause : clause.substr(0, sp);
        std::string payload = sp == std::string::npos ? "" : trim(clause.substr(sp + 1));
        if (kw == "power") {
            if (payload.empty()) throw Error("power clause needs values");
            spec.power.clear();
            for (const std::string& tok : split(payload, ','))
                spec.power.push_back(parse_nat(tok, "ramification power"));
            saw_power = true;
        } else if (kw == "shift") {
            if (payload.empty()) throw Error("shift clause needs values");
            spec.shift.clear();
            for (const std::string& tok : split(payload, ','))
                spec.shift.push_back(parse_rational(trim(tok)));
        } else if (kw == "blowup") {
            auto arrow = payload.find("->");
            if (arrow == std::string::npos) throw Error("blowup clause needs the form I->j");
            BlowUp b;
            for (const std::string& tok : split(payload.substr(0, arrow), ','))
                b.vars.insert(parse_nat(tok, "blow-up variable") - 1);
            b.center = parse_nat(payload.substr(arrow + 2), "blow-up center") - 1;
            spec.blowups.push_back(std::move(b));
        } else {
            throw Error("unknown transform clause '" + kw + "'");
        }
    }
    if (!saw_power) throw Error("transform spec needs a power clause");
    if (spec.power.size() != m) throw Error("transform power arity != number of variables");
    if (spec.shift.size() != m) throw Error("transform shift arity != number of variables");
    spec.validate();
    return spec;
}

std::pair<QMatrix, QMatrix> kappa_exponent_map(const TransformSpec& spec) {
    spec.validate();
    std::size_t m = spec.num_vars();
    // Blow-ups compose left to right (first listed outermost); each factor
    // is the identity plus a 1 in column `center` for every other row of I.
    QMatrix k = QMatrix::identity(m);
    for (const BlowUp& b : spec.blowups) {
        QMatrix e = QMatrix::identity(m);
        for (std::size_t i : b.vars)
            if (i != b.center) e.at(i, b.center) = 1;
        k = k * e;
    }
    // Ramification scales row i by d_i, so the d-grid maps into Z^m.
    QMatrix mmat(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            mmat.at(i, j) = Rational(spec.power[i]) * k.at(i, j);
    return {mmat, mmat.inverse()};
}

TruncatedSeries transform_series(const TransformSpec& spec, const TruncatedSeries& phi) {
    const SeriesShape& sh = phi.shape();
    if (spec.num_vars() != sh.m) throw MismatchError("transform arity != series arity");
    auto [mmat, minv] = kappa_exponent_map(spec);
    std::vector<Rational> w = new_weight(minv, sh);
    QMatrix mt = mmat.transposed();
    std::map<Exponent, Scalar> out;
    for (const auto& [e, c] : phi.entries()) {
        Exponent img = map_exponent(mt, spec.shift, e);
        require_integer_point(img);
        out.emplace(std::move(img), c);
    }
    ExtRational nb = phi.bound();
    if (nb) nb = *nb + dot(sh.weight, spec.shift);
    SeriesShape out_shape(sh.m, std::vector<unsigned long>(sh.m, 1), std::move(w));
    return TruncatedSeries(std::move(out_shape), std::move(out), std::move(nb));
}

SupportSet transform_support(const TransformSpec& spec, const SupportSet& s) {
    const SeriesShape& sh = s.shape();
    if (spec.num_vars() != sh.m) throw MismatchError("transform arity != support arity");
    auto [mmat, minv] = kappa_exponent_map(spec);
    std::vector<Rational> w = new_weight(minv, sh);
    QMatrix mt = mmat.transposed();
    std::set<Exponent> out;
    for (const Exponent& e : s.points()) {
        Exponent img = map_exponent(mt, spec.shift, e);
        require_integer_point(img);
        out.insert(std::move(img));
    }
    ExtRational nb = s.bound();
    if (nb) nb = *nb + dot(sh.weight, spec.shift);
    SeriesShape out_shape(sh.m, std::vector<unsigned long>(sh.m, 1), std::move(w));
    return SupportSet(std::move(out_shape), std::move(out), std::move(nb));
}

SupportSet inverse_transform_support(const TransformSpec& spec, const SupportSet& s) {
    const SeriesShape& sh = s.shape();
    if (spec.num_vars() != sh.m) throw MismatchError("transform arity != support arity");
    auto [mmat, minv] = kappa_exponent_map(spec);
    QMatrix mit = minv.transposed();
    std::set<Exponent> out;
    for (const Exponent& e : s.points()) {
        std::vector<Rational> v = mit.apply(e.e);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= spec.shift[i];
        out.insert(Exponent(std::move(v)));
    }
    std::vector<Rational> w = mmat.apply(sh.weight);
    ExtRational nb = s.bound();
    if (nb) nb = *nb - dot(w, spec.shift);
    // minimal grid on which every preimage point lies
    std::vector<unsigned long> grid(sh.m, 1);
    for (std::size_t i = 0; i < sh.m; ++i) {
        Integer den(1);
        for (const Exponent& e : out) den = lcm_int(den, e[i].get_den());
        grid[i] = to_ulong(den, "grid denominator");
    }
    SeriesShape out_shape(sh.m, std::move(grid), std::move(w));
    return SupportSet(std::move(out_shape), std::move(out), std::move(nb));
}

bool support_equivariance_check(const TransformSpec& spec, const TruncatedSeries& phi) {
    auto [mmat, minv] = kappa_exponent_map(spec);
    (void)minv;
    QMatrix mt = mmat.transposed();
    // Left: substitute the monomial map into the series and collect what
    // survives cancellation. Right: the pointwise image of the support.
    std::map<Exponent, Scalar> subst;
    std::set<Exponent> image;
    for (const auto& [e, c] : phi.entries()) {
        Exponent img = map_exponent(mt, spec.shift, e);
        auto [it, fresh] = subst.emplace(img, c);
        if (!fresh) it->second = it->second + c;
        image.insert(std::move(img));
    }
    std::set<Exponent> left;
    for (const auto& [e, c] : subst)
        if (!c.is_zero()) left.insert(e);
    return left == image;
}

namespace {

// Expresses jets of the old unknowns in the new coordinates. Writing mu_j
// for the monomial substituted for t_j, the seeds are x_i = mu^-l z_i and
// one derivative step is
//   d/dt_j = mu_j^-1 * sum_b (M^-T)_{jb} s_b d/ds_b
// applied through the total derivative on differential polynomials.
struct JetRewriter {
    std::size_t n;
    SeriesShape work;
    QMatrix mit;              // M^-T
    std::vector<Exponent> mu; // exponent of mu_j = row j of M
    Exponent base;            // -M^T l
    std::map<JetVar, DiffPolynomial> cache;

    const DiffPolynomial& expr(const JetVar& v) {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        std::size_t m = work.m;
        DiffPolynomial out(n, work);
        if (v.order() == 0) {
            out = DiffPolynomial::from_jet(n, work, v)
                      .series_mul(TruncatedSeries::monomial(work, Scalar(1), base));
        } else {
            std::size_t j = 0;
            while (v.deriv[j] == 0) ++j;
            JetVar prev = v;
            --prev.deriv[j];
            const DiffPolynomial& p = expr(prev);
            DiffPolynomial acc(n, work);
            for (std::size_t b = 0; b < m; ++b) {
                const Rational& c = mit.at(j, b);
                if (c == 0) continue;
                DiffPolynomial db = total_derivative(p, b);
                if (db.is_zero()) continue;
                acc = acc + db.series_mul(
                                TruncatedSeries::monomial(work, Scalar(c), Exponent::unit(m, b)));
            }
            Exponent negmu = mu[j];
            for (std::size_t i = 0; i < m; ++i) negmu[i] = -negmu[i];
            out = acc.series_mul(TruncatedSeries::monomial(work, Scalar(1), negmu));
        }
        return cache.emplace(v, std::move(out)).first->second;
    }
};

// Multiply by the monomial clearing negative exponents and common content:
// shift every variable by minus its minimal occurring exponent.
DiffPolynomial clear_content(const DiffPolynomial& f) {
    std::vector<Rational> mn;
    bool any = false;
    for (const auto& [mono, c] : f.terms())
        for (const auto& [e, coeff] : c.entries()) {
            (void)coeff;
            if (!any) {
                mn = e.e;
                any = true;
            } else {
                for (std::size_t i = 0; i < mn.size(); ++i)
                    if (e[i] < mn[i]) mn[i] = e[i];
            }
        }
    if (!any) return f;
    bool trivial = true;
    for (Rational& x : mn) {
        if (x != 0) trivial = false;
        x = -x;
    }
    if (trivial) return f;
    return f.series_mul(TruncatedSeries::monomial(f.shape(), Scalar(1), Exponent(std::move(mn))));
}

} // namespace

TransformedSystem transform_system(const TransformSpec& spec, const GeneratorSet& gens) {
    if (gens.empty()) throw MismatchError("transform of an empty generator set");
    const SeriesShape& sh = gens.front().shape();
    std::size_t n = gens.front().num_dep();
    for (const DiffPolynomial& g : gens)
        if (!(g.shape() == sh) || g.num_dep() != n)
            throw MismatchError("generators do not share one shape");
    std::size_t m = sh.m;
    if (spec.num_vars() != m) throw MismatchError("transform arity != system arity");

    auto [mmat, minv] = kappa_exponent_map(spec);
    std::vector<Rational> w = new_weight(minv, sh);

    // Working grid fine enough for everything the rewrite can produce:
    // images of old grid points and the seed shift -M^T l.
    Integer den(1);
    for (unsigned long g : sh.grid) den = lcm_int(den, Integer(g));
    for (const Rational& l : spec.shift) den = lcm_int(den, l.get_den());
    SeriesShape work(m, std::vector<unsigned long>(m, to_ulong(den, "working grid")), w);

    QMatrix mt = mmat.transposed();
    JetRewriter rw{n, work, minv.transposed(), {}, Exponent::zero(m), {}};
    rw.mu.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> row(m);
        for (std::size_t i = 0; i < m; ++i) row[i] = mmat.at(j, i);
        rw.mu.emplace_back(std::move(row));
    }
    {
        std::vector<Rational> b = mt.apply(spec.shift);
        for (Rational& x : b) x = -x;
        rw.base = Exponent(std::move(b));
    }

    std::vector<DiffPolynomial> out;
    out.reserve(gens.size());
    for (const DiffPolynomial& f : gens) {
        DiffPolynomial acc(n, work);
        for (const auto& [mono, coef] : f.terms()) {
            // Coefficients only see t = kappa(s): exponents move by M^T
            // with no shift, and term weights (hence the bound) stay put.
            std::map<Exponent, Scalar> ce;
            for (const auto& [e, c] : coef.entries()) ce.emplace(Exponent(mt.apply(e.e)), c);
            DiffPolynomial term =
                DiffPolynomial::from_series(n, TruncatedSeries(work, std::move(ce), coef.bound()));
            for (const auto& [jet, mult] : mono.jets) term = term * rw.expr(jet).pow(mult);
            acc = acc + term;
        }
        out.push_back(clear_content(acc));
    }

    // Re-home the system on the minimal grid fitting every exponent.
    std::vector<unsigned long> grid(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        Integer gden(1);
        for (const DiffPolynomial& g : out)
            for (const auto& [mono, c] : g.terms()) {
                (void)mono;
                for (const auto& [e, coeff] : c.entries()) {
                    (void)coeff;
                    gden = lcm_int(gden, e[i].get_den());
                }
            }
        grid[i] = to_ulong(gden, "grid denominator");
    }
    SeriesShape final_shape(m, std::move(grid), std::move(w));
    GeneratorSet rebuilt;
    rebuilt.reserve(out.size());
    for (const DiffPolynomial& g : out) {
        std::map<DiffMonomial, TruncatedSeries> terms;
        for (const auto& [mono, c] : g.terms())
            terms.emplace(mono, TruncatedSeries(final_shape, c.entries(), c.bound()));
        rebuilt.emplace_back(n, final_shape, std::move(terms));
    }
    return TransformedSystem{std::move(rebuilt), std::move(final_shape)};
}

DiffPolynomial normalize_up_to_unit(const DiffPolynomial& g) {
    if (g.terms().empty()) return g;
    const auto& [mono, c] = *g.terms().begin();
    (void)mono;
    if (c.entries().empty()) return g;
    const SeriesShape& sh = g.shape();
    auto best = c.entries().begin();
    Rational bw = sh.weight_of(best->first);
    for (auto it = std::next(best); it != c.entries().end(); ++it) {
        Rational w = sh.weight_of(it->first);
        if (w < bw) {
            best = it;
            bw = w;
        }
    }
    Exponent e = best->first;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = -e[i];
    return g.series_mul(TruncatedSeries::monomial(sh, Scalar(1) / best->second, e));
}

std::optional<TransformSpec> find_ordinary_transform(const TruncatedSeries& phi,
                                                     unsigned long max_k) {
    if (phi.num_vars() != 1)
        throw MismatchError("ordinary transform search handles one variable only");
    TransformSpec spec;
    spec.power = {1};
    spec.shift = {Rational(0)};
    if (phi.entries().empty()) return spec;
    Rational mn = phi.entries().begin()->first[0];
    for (const auto& [e, c] : phi.entries()) {
        (void)c;
        if (e[0] < mn) mn = e[0];
    }
    if (mn < 0) spec.shift[0] = -mn;
    Integer den(1);
    for (const auto& [e, c] : phi.entries()) {
        (void)c;
        den = lcm_int(den, Rational(e[0] + spec.shift[0]).get_den());
    }
    if (!mpz_fits_ulong_p(den.get_mpz_t())) return std::nullopt;
    unsigned long k = mpz_get_ui(den.get_mpz_t());
    if (k > max_k) return std::nullopt;
    spec.power = {k};
    return spec;
}

} // namespace tropdiff
