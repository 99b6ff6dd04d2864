#include <doctest.h>

#include "helpers.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/tropicalize.hpp"

using namespace tropdiff;

namespace {

const SeriesShape U = SeriesShape::univariate();
const CoeffValuation TRIV = CoeffValuation::trivial();

Exponent e1(long n) { return Exponent({Rational(n)}); }

DiffPolynomial jet1(unsigned long k) {
    return DiffPolynomial::from_jet(1, U, JetVar(0, {k}));
}

DiffPolynomial tpoly(long n) {
    return DiffPolynomial::from_series(1, TruncatedSeries::monomial(U, Scalar(1), e1(n)));
}

// t*x' - x - t, the running linear example
DiffPolynomial running() { return tpoly(1) * jet1(1) - jet1(0) - tpoly(1); }

SupportSet supp(std::set<long> pts, ExtRational bound = std::nullopt) {
    std::set<Exponent> s;
    for (long p : pts) s.insert(e1(p));
    return SupportSet(U, std::move(s), std::move(bound));
}

} // namespace

TEST_CASE("tropicalization replaces coefficients by their valuations") {
    TropDiffPolynomial tf = tropicalize(running(), TRIV);
    CHECK(tf.str({"t"}, {"x"}) == "(1,0)*x' + (0,0)*x + (1,0)");

    TropDiffPolynomial td = tropicalize(total_derivative(running(), 0), TRIV);
    CHECK(td.str({"t"}, {"x"}) == "(1,0)*x'' + (0,0)");

    // 2-adic values land in the second slot
    DiffPolynomial g = jet1(1) - tpoly(0).scalar_mul(Scalar(2)) * jet1(0);
    CHECK(tropicalize(g, CoeffValuation::p_adic(2)).str({"t"}, {"x"}) ==
          "(0,0)*x' + (0,1)*x");
}

TEST_CASE("tropicalization needs exactly known coefficients") {
    TruncatedSeries murky(U, {}, Rational(3)); // zero below 3, unknown beyond
    DiffPolynomial f(1, U, {{DiffMonomial::of(JetVar(0, {1})), murky}});
    CHECK(f.is_zero() == false);
    CHECK_THROWS_AS(tropicalize(f, TRIV), IndeterminateBelowBound);
}

TEST_CASE("term evaluation at a support") {
    TropDiffPolynomial tf = tropicalize(running(), TRIV);
    std::vector<TropValue> terms = trop_evaluate(tf, {supp({1})});
    REQUIRE(terms.size() == 3);
    // x' term, x term, then the constant, in canonical monomial order
    CHECK(terms[0] == TropValue({Rational(1), Rational(0)}));
    CHECK(terms[1] == TropValue({Rational(1), Rational(0)}));
    CHECK(terms[2] == TropValue({Rational(1), Rational(0)}));
    CHECK(tropically_vanishes(terms));

    // exact empty support: jets evaluate to infinity, the constant survives
    std::vector<TropValue> at_empty = trop_evaluate(tf, {supp({})});
    CHECK(at_empty[0].is_infinite());
    CHECK(at_empty[1].is_infinite());
    CHECK(at_empty[2] == TropValue({Rational(1), Rational(0)}));
    CHECK_FALSE(tropically_vanishes(at_empty));
}

TEST_CASE("derivative-bounded membership is inclusive in the bound") {
    GeneratorSet gens{running()};
    // at K = 0 the support {1} balances; its first derivative breaks it
    CHECK(is_tropical_solution_up_to(gens, {supp({1})}, 0, TRIV));
    CHECK_FALSE(is_tropical_solution_up_to(gens, {supp({1})}, 1, TRIV));

    auto fail = trop_check_detail(gens, {supp({1})}, 1, TRIV);
    REQUIRE(fail.has_value());
    CHECK(fail->generator == 0);
    CHECK(fail->alpha == std::vector<unsigned long>{1});
    REQUIRE(fail->terms.size() == 2);
    CHECK(fail->terms[0].is_infinite());
    CHECK(fail->terms[1] == TropValue({Rational(0), Rational(0)}));
}

TEST_CASE("exact finite supports eventually die under derivation") {
    // {0..4} survives x' - x up to three derivatives and no further
    GeneratorSet gens{jet1(1) - jet1(0)};
    SupportSet window = supp({0, 1, 2, 3, 4});
    CHECK(is_tropical_solution_up_to(gens, {window}, 3, TRIV));
    CHECK_FALSE(is_tropical_solution_up_to(gens, {window}, 4, TRIV));
    CHECK_FALSE(is_tropical_solution_up_to(gens, {window}, 7, TRIV));

    // the empty support is the shadow of the zero solution
    CHECK(is_tropical_solution_up_to(gens, {supp({})}, 10, TRIV));
}

TEST_CASE("truncated supports go indeterminate instead of lying") {
    GeneratorSet gens{jet1(1) - jet1(0)};
    // bounded support: derivatives empty it below its bound, and phi
    // cannot certify a minimum that might be beaten by unknown points
    SupportSet b = supp({0, 1}, Rational(3));
    CHECK_THROWS_AS(is_tropical_solution_up_to(gens, {b}, 2, TRIV),
                    IndeterminateBelowBound);
}

TEST_CASE("window search keeps exactly the surviving subsets") {
    GeneratorSet gens{jet1(1) - jet1(0)};
    auto sols = search_boolean_solutions(gens, 4, 3, TRIV);
    bool has_full = false;
    for (const auto& s : sols)
        if (s.points().size() == 5) has_full = true;
    CHECK(has_full);

    // one more derivative kills the full window
    auto sols4 = search_boolean_solutions(gens, 4, 4, TRIV);
    for (const auto& s : sols4) CHECK(s.points().size() != 5);
    // deeper refutation only shrinks the solution set
    CHECK(sols4.size() <= sols.size());
    for (const auto& s : sols4)
        CHECK(std::find(sols.begin(), sols.end(), s) != sols.end());

    // the running example admits no boolean power series support at all
    auto none = search_boolean_solutions({running()}, 10, 8, TRIV);
    CHECK(none.empty());
}

TEST_CASE("derivative multi-indices enumerate by grade") {
    auto a = derivative_multi_indices(1, 3);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == std::vector<unsigned long>{0});
    CHECK(a[3] == std::vector<unsigned long>{3});

    auto b = derivative_multi_indices(2, 2);
    REQUIRE(b.size() == 6);
    CHECK(b[0] == std::vector<unsigned long>{0, 0});
    CHECK(b[1] == std::vector<unsigned long>{1, 0});
    CHECK(b[2] == std::vector<unsigned long>{0, 1});
    CHECK(b[3] == std::vector<unsigned long>{2, 0});
    CHECK(b[4] == std::vector<unsigned long>{1, 1});
    CHECK(b[5] == std::vector<unsigned long>{0, 2});
}

TEST_CASE("multivariate checker accepts the flattened binomial support") {
    // system { dz/dt2, (1+t1) dz/dt1 - t2 dz/dt2 - z/2 } on two variables
    SeriesShape s2(2, {1, 1}, {Rational(1), Rational(1)});
    auto jet = [&](unsigned long i, unsigned long j) {
        return DiffPolynomial::from_jet(1, s2, JetVar(0, {i, j}));
    };
    auto mono = [&](long i, long j) {
        return DiffPolynomial::from_series(
            1, TruncatedSeries::monomial(s2, Scalar(1), Exponent({Rational(i), Rational(j)})));
    };
    DiffPolynomial g1 = jet(0, 1);
    DiffPolynomial g2 =
        (mono(0, 0) + mono(1, 0)) * jet(1, 0) - mono(0, 1) * jet(0, 1) -
        jet(0, 0).scalar_mul(Scalar(Rational(1, 2)));

    std::set<Exponent> pts;
    for (long i = 0; i <= 11; ++i) pts.insert(Exponent({Rational(i), Rational(0)}));
    SupportSet a(s2, std::move(pts), std::nullopt);
    CHECK(is_tropical_solution_up_to({g1, g2}, {a}, 3, TRIV));
}
