#include <doctest.h>

#include "helpers.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/transform.hpp"

using namespace tropdiff;
using testing::Rng;

namespace {

Exponent e1(long n, long d = 1) { return Exponent({Rational(n, d)}); }
Exponent e2(Rational a, Rational b) { return Exponent({std::move(a), std::move(b)}); }

QMatrix mat2(long a, long b, long c, long d) {
    QMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

} // namespace

TEST_CASE("rational matrices invert exactly") {
    QMatrix m = mat2(1, 1, 0, 1);
    CHECK(m.inverse() == mat2(1, -1, 0, 1));
    CHECK(m * m.inverse() == QMatrix::identity(2));
    CHECK(m.transposed() == mat2(1, 0, 1, 1));
    CHECK_THROWS_AS(mat2(1, 2, 2, 4).inverse(), SingularMatrixError);
    CHECK(m.apply({Rational(2), Rational(3)}) ==
          std::vector<Rational>{Rational(5), Rational(3)});
}

TEST_CASE("transform specs parse and print in both directions") {
    TransformSpec s = parse_transform_spec("power 2 ; shift 0", 1);
    CHECK(s.power == std::vector<unsigned long>{2});
    CHECK(s.shift == std::vector<Rational>{Rational(0)});
    CHECK(s.blowups.empty());
    CHECK(s.str() == "power 2 ; shift 0");

    TransformSpec t = parse_transform_spec("power 1,1 ; shift 0,-1/2 ; blowup 1,2->2", 2);
    CHECK(t.power == std::vector<unsigned long>{1, 1});
    CHECK(t.shift == std::vector<Rational>{Rational(0), Rational(-1, 2)});
    REQUIRE(t.blowups.size() == 1);
    CHECK(t.blowups[0].vars == std::set<std::size_t>{0, 1}); // 0-based inside
    CHECK(t.blowups[0].center == 1);
    CHECK(t.str() == "power 1,1 ; shift 0,-1/2 ; blowup 1,2->2");
    CHECK(parse_transform_spec(t.str(), 2) == t);

    // shift defaults to zero, clauses come in any order
    CHECK(parse_transform_spec("power 3", 1).shift == std::vector<Rational>{Rational(0)});
    CHECK(parse_transform_spec("shift 1 ; power 2", 1) ==
          parse_transform_spec("power 2 ; shift 1", 1));

    CHECK_THROWS_AS(parse_transform_spec("shift 0", 1), Error);        // power required
    CHECK_THROWS_AS(parse_transform_spec("power 2,2", 1), Error);      // size mismatch
    CHECK_THROWS_AS(parse_transform_spec("power 0", 1), Error);        // powers >= 1
    CHECK_THROWS_AS(parse_transform_spec("power 1,1 ; blowup 1->1", 2), Error);
    CHECK_THROWS_AS(parse_transform_spec("power 1,1 ; blowup 1,2->3", 2), Error);
    CHECK_THROWS_AS(parse_transform_spec("power 2 ; wobble 1", 1), Error);
}

TEST_CASE("random specs survive a print/parse round trip") {
    Rng rng(91);
    for (int i = 0; i < 100; ++i) {
        std::size_t m = static_cast<std::size_t>(testing::rand_long(rng, 1, 3));
        TransformSpec spec = testing::rand_spec(rng, m);
        CHECK(parse_transform_spec(spec.str(), m) == spec);
    }
}

TEST_CASE("exponent matrix of the monomial substitution") {
    TransformSpec ram2;
    ram2.power = {2};
    ram2.shift = {Rational(0)};
    auto [m1, m1i] = kappa_exponent_map(ram2);
    CHECK(m1.at(0, 0) == 2);
    CHECK(m1i.at(0, 0) == Rational(1, 2));

    TransformSpec flat = parse_transform_spec("power 1,1 ; shift 0,-1/2 ; blowup 1,2->2", 2);
    auto [m2, m2i] = kappa_exponent_map(flat);
    CHECK(m2 == mat2(1, 1, 0, 1));
    CHECK(m2i == mat2(1, -1, 0, 1));

    // blow-up words compose left to right, and ramification scales rows
    TransformSpec word = parse_transform_spec(
        "power 1,2,1 ; shift 0,0,0 ; blowup 1,2->2 ; blowup 2,3->3", 3);
    auto [m3, m3i] = kappa_exponent_map(word);
    QMatrix expect(3, 3);
    long rows[3][3] = {{1, 1, 1}, {0, 2, 2}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expect.at(i, j) = rows[i][j];
    CHECK(m3 == expect);

    TransformSpec rev = parse_transform_spec(
        "power 1,2,1 ; shift 0,0,0 ; blowup 2,3->3 ; blowup 1,2->2", 3);
    CHECK_FALSE(kappa_exponent_map(rev).first == expect);
}

TEST_CASE("series transform oracles") {
    SeriesShape g2(1, {2}, {Rational(1)});
    TransformSpec ram2 = parse_transform_spec("power 2 ; shift 0", 1);

    TruncatedSeries phi = TruncatedSeries::monomial(g2, Scalar::sqrt_of(2), e1(1, 2));
    TruncatedSeries psi = transform_series(ram2, phi);
    CHECK(psi.entries().size() == 1);
    CHECK(psi.coeff(e1(1)) == Scalar::sqrt_of(2));
    CHECK(psi.is_exact());
    CHECK(psi.shape().weight == std::vector<Rational>{Rational(1, 2)});
    CHECK(psi.shape().grid == std::vector<unsigned long>{1});

    // shifted ramification moves the truncated exponential onto a cube grid
    SeriesShape u = SeriesShape::univariate();
    std::map<Exponent, Scalar> ent;
    Rational fact(1);
    for (long i = 0; i <= 5; ++i) {
        ent[e1(i)] = Scalar(Rational(1) / fact);
        fact *= i + 1;
    }
    TruncatedSeries e(u, std::move(ent), Rational(6));
    TransformSpec shift1 = parse_transform_spec("power 3 ; shift 1", 1);
    TruncatedSeries te = transform_series(shift1, e);
    CHECK(*te.bound() == 7);
    CHECK(te.shape().weight == std::vector<Rational>{Rational(1, 3)});
    for (long i = 0; i <= 5; ++i) CHECK(te.coeff(e1(3 * (i + 1))) == e.coeff(e1(i)));

    // images must land on the nonnegative integers
    TransformSpec id1 = parse_transform_spec("power 1 ; shift 0", 1);
    CHECK_THROWS_AS(transform_series(id1, TruncatedSeries::monomial(u, Scalar(1), e1(-1))),
                    OffGridResult);
    CHECK_THROWS_AS(transform_series(id1, TruncatedSeries::monomial(g2, Scalar(1), e1(1, 2))),
                    OffGridResult);
}

TEST_CASE("transforms that break weight positivity are rejected") {
    SeriesShape s(2, {1, 1}, {Rational(1), Rational(2)});
    TransformSpec flat = parse_transform_spec("power 1,1 ; shift 0,0 ; blowup 1,2->2", 2);
    TruncatedSeries one = TruncatedSeries::constant(s, Scalar(1));
    CHECK_THROWS_AS(transform_series(flat, one), Error);
}

TEST_CASE("support transform matches the flattened binomial example") {
    SeriesShape s(2, {1, 2}, {Rational(2), Rational(1)});
    std::set<Exponent> pts;
    for (long i = 0; i <= 11; ++i) pts.insert(e2(Rational(i), Rational(1 - 2 * i, 2)));
    SupportSet orig(s, pts, Rational(12));

    TransformSpec flat = parse_transform_spec("power 1,1 ; shift 0,-1/2 ; blowup 1,2->2", 2);
    SupportSet moved = transform_support(flat, orig);
    CHECK(*moved.bound() == Rational(23, 2));
    CHECK(moved.shape().weight == std::vector<Rational>{Rational(1), Rational(1)});
    std::set<Exponent> expect;
    for (long i = 0; i <= 11; ++i) expect.insert(e2(Rational(i), Rational(0)));
    CHECK(moved.points() == expect);

    SupportSet back = inverse_transform_support(flat, moved);
    CHECK(back == orig);
    CHECK(back.shape().weight == orig.shape().weight);
    CHECK(back.shape().grid == orig.shape().grid);
}

TEST_CASE("random transforms are support-equivariant and invertible") {
    Rng rng(314159);
    int done = 0;
    while (done < 200) {
        std::size_t m = static_cast<std::size_t>(testing::rand_long(rng, 1, 3));
        TransformSpec spec = testing::rand_spec(rng, m);
        auto [mat, inv] = kappa_exponent_map(spec);
        QMatrix invt = inv.transposed();

        // weight of the source chosen so the transformed weight stays positive
        std::vector<Rational> u;
        for (std::size_t i = 0; i < m; ++i) u.emplace_back(testing::rand_long(rng, 1, 3));
        std::vector<Rational> w = mat.apply(u);

        // exponents are inverse images of nonnegative integer points, so the
        // transform is defined by construction
        std::map<Exponent, Scalar> entries;
        int npts = static_cast<int>(testing::rand_long(rng, 1, 4));
        std::vector<unsigned long> grid(m, 1);
        std::vector<Exponent> pool;
        for (int p = 0; p < npts; ++p) {
            std::vector<Rational> f;
            for (std::size_t i = 0; i < m; ++i) f.emplace_back(testing::rand_long(rng, 0, 6));
            std::vector<Rational> e = invt.apply(f);
            for (std::size_t i = 0; i < m; ++i) {
                e[i] -= spec.shift[i];
                e[i].canonicalize();
                grid[i] = std::lcm(grid[i], static_cast<unsigned long>(e[i].get_den().get_ui()));
            }
            pool.push_back(Exponent(std::move(e)));
        }
        SeriesShape shape(m, grid, w);
        for (auto& e : pool) entries[e] = Scalar(testing::rand_nonzero_rational(rng));
        ExtRational bound;
        if (testing::rand_long(rng, 0, 1) == 1) {
            Rational maxw(0);
            for (const auto& [e, c] : entries) maxw = std::max(maxw, shape.weight_of(e));
            bound = maxw + testing::rand_long(rng, 1, 3);
        }
        TruncatedSeries phi(shape, std::move(entries), bound);
        if (phi.entries().empty()) continue;

        CHECK(support_equivariance_check(spec, phi));

        SupportSet s = support(phi);
        SupportSet round = inverse_transform_support(spec, transform_support(spec, s));
        CHECK(round.points() == s.points());
        CHECK(round.bound() == s.bound());
        CHECK(round.shape().weight == s.shape().weight);
        ++done;
    }
}

TEST_CASE("system transform reproduces the ramified ODE") {
    SeriesShape g2(1, {2}, {Rational(1)});
    DiffPolynomial f = DiffPolynomial::from_jet(1, g2, JetVar(0, {0})) *
                           DiffPolynomial::from_jet(1, g2, JetVar(0, {1})) -
                       DiffPolynomial::from_series(1, TruncatedSeries::constant(g2, Scalar(1)));
    TransformSpec ram2 = parse_transform_spec("power 2 ; shift 0", 1);
    TransformedSystem ts = transform_system(ram2, {f});
    REQUIRE(ts.gens.size() == 1);
    CHECK(ts.shape.grid == std::vector<unsigned long>{1});
    CHECK(ts.gens[0].str({"t"}, {"z"}) == "1/2*z*z' - t");

    DiffPolynomial expect = DiffPolynomial::from_jet(1, ts.shape, JetVar(0, {0})) *
                                DiffPolynomial::from_jet(1, ts.shape, JetVar(0, {1})) -
                            DiffPolynomial::from_series(
                                1, TruncatedSeries::monomial(ts.shape, Scalar(2), e1(1)));
    CHECK(normalize_up_to_unit(ts.gens[0]) == normalize_up_to_unit(expect));
    CHECK(normalize_up_to_unit(ts.gens[0]).str({"t"}, {"z"}) == "z*z' - 2*t");
}

TEST_CASE("system transform flattens the square-root PDE") {
    SeriesShape s(2, {1, 2}, {Rational(2), Rational(1)});
    auto jet = [&](unsigned long i, unsigned long j) {
        return DiffPolynomial::from_jet(1, s, JetVar(0, {i, j}));
    };
    auto mono = [&](long i, long n, long d) {
        std::vector<Rational> e{Rational(i), Rational(n, d)};
        return DiffPolynomial::from_series(
            1, TruncatedSeries::monomial(s, Scalar(1), Exponent(std::move(e))));
    };
    // t1 dx/dt1 + t2 dx/dt2 - x/2 and dx/dt1 - dx/dt2
    DiffPolynomial f1 = mono(1, 0, 1) * jet(1, 0) + mono(0, 1, 1) * jet(0, 1) -
                        jet(0, 0).scalar_mul(Scalar(Rational(1, 2)));
    DiffPolynomial f2 = jet(1, 0) - jet(0, 1);

    TransformSpec flat = parse_transform_spec("power 1,1 ; shift 0,-1/2 ; blowup 1,2->2", 2);
    TransformedSystem ts = transform_system(flat, {f1, f2});
    REQUIRE(ts.gens.size() == 2);
    CHECK(ts.shape.grid == std::vector<unsigned long>{1, 1});
    CHECK(ts.shape.weight == std::vector<Rational>{Rational(1), Rational(1)});

    CHECK(ts.gens[0].str({"t1", "t2"}, {"z"}) == "D[z;t2]");
    CHECK(ts.gens[1].str({"t1", "t2"}, {"z"}) ==
          "(1 + t1)*D[z;t1] - t2*D[z;t2] - 1/2*z");
}

TEST_CASE("transforming the derivative matches differentiating the transform") {
    // with one content clearing by s, T(dF) is s (TF)' - TF up to a unit
    SeriesShape g2(1, {2}, {Rational(1)});
    DiffPolynomial f = DiffPolynomial::from_jet(1, g2, JetVar(0, {0})) *
                           DiffPolynomial::from_jet(1, g2, JetVar(0, {1})) -
                       DiffPolynomial::from_series(1, TruncatedSeries::constant(g2, Scalar(1)));
    TransformSpec ram2 = parse_transform_spec("power 2 ; shift 0", 1);

    DiffPolynomial tdf = transform_system(ram2, {total_derivative(f, 0)}).gens[0];
    DiffPolynomial g = transform_system(ram2, {f}).gens[0];
    DiffPolynomial rhs =
        total_derivative(g, 0).series_mul(
            TruncatedSeries::monomial(g.shape(), Scalar(1), e1(1))) -
        g;
    CHECK(normalize_up_to_unit(tdf) == normalize_up_to_unit(rhs));
}

TEST_CASE("unit normalization is stable under unit monomial factors") {
    Rng rng(2718);
    for (int i = 0; i < 100; ++i) {
        SeriesShape shape = testing::rand_shape(rng, 2);
        DiffPolynomial g = testing::rand_diffpoly(rng, 1, shape);
        if (g.is_zero()) continue;
        DiffPolynomial n = normalize_up_to_unit(g);
        CHECK(normalize_up_to_unit(n) == n);
        Exponent e = testing::rand_exponent(rng, shape, true);
        Scalar c(testing::rand_nonzero_rational(rng));
        DiffPolynomial moved =
            g.series_mul(TruncatedSeries::monomial(shape, c, e));
        CHECK(normalize_up_to_unit(moved) == n);
    }
}

TEST_CASE("a least ordinary transform is found when one exists") {
    SeriesShape g2(1, {2}, {Rational(1)});
    SeriesShape u = SeriesShape::univariate();

    auto spec = find_ordinary_transform(
        TruncatedSeries::monomial(g2, Scalar::sqrt_of(2), e1(1, 2)), 10);
    REQUIRE(spec.has_value());
    CHECK(spec->power == std::vector<unsigned long>{2});
    CHECK(spec->shift == std::vector<Rational>{Rational(0)});

    TruncatedSeries laurent = TruncatedSeries::monomial(u, Scalar(1), e1(-1)) +
                              TruncatedSeries::constant(u, Scalar(1));
    auto spec2 = find_ordinary_transform(laurent, 10);
    REQUIRE(spec2.has_value());
    CHECK(spec2->power == std::vector<unsigned long>{1});
    CHECK(spec2->shift == std::vector<Rational>{Rational(1)});

    auto spec3 = find_ordinary_transform(TruncatedSeries::monomial(g2, Scalar(1), e1(-3, 2)), 10);
    REQUIRE(spec3.has_value());
    CHECK(spec3->power == std::vector<unsigned long>{1});
    CHECK(spec3->shift == std::vector<Rational>{Rational(3, 2)});

    // the zero series needs no change of coordinates
    auto spec4 = find_ordinary_transform(TruncatedSeries(u), 10);
    REQUIRE(spec4.has_value());
    CHECK(spec4->power == std::vector<unsigned long>{1});

    SeriesShape g7(1, {7}, {Rational(1)});
    CHECK_FALSE(
        find_ordinary_transform(TruncatedSeries::monomial(g7, Scalar(1), e1(1, 7)), 5)
            .has_value());

    SeriesShape two(2, {1, 1}, {Rational(1), Rational(1)});
    CHECK_THROWS_AS(find_ordinary_transform(TruncatedSeries::constant(two, Scalar(1)), 5),
                    MismatchError);

    // found transforms actually work
    TruncatedSeries moved = transform_series(*spec2, laurent);
    CHECK(moved.coeff(e1(0)) == Scalar(1));
    CHECK(moved.coeff(e1(1)) == Scalar(1));
}
