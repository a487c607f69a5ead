#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrmat/errors.hpp"
#include "dynrmat/hseries.hpp"
#include "dynrmat/poly.hpp"
#include "dynrmat/prng.hpp"
#include "dynrmat/rational.hpp"
#include "dynrmat/scalar_expr.hpp"
#include "dynrmat/zero_test.hpp"
#include "test_util.hpp"

using namespace dynrmat;
using namespace testutil;

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(2, -4).denominator_str() == "2");
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational(3) / Rational(0), DivisionByZero);
    CHECK(Rational(3, 4) + Rational(1, 4) == Rational(1));
    CHECK(Rational(1, 3).pow(3) == Rational(1, 27));
    CHECK(Rational(-2, 3).inv() == Rational(-3, 2));
    CHECK(Rational(7, 2).str() == "7/2");
    CHECK(factorial(5) == Rational(120));
}

TEST_CASE("poly arithmetic and ring axioms on random triples") {
    SplitMix64 rng(42);
    for (int it = 0; it < 40; ++it) {
        Poly a = random_poly(rng, 3, 3, 4);
        Poly b = random_poly(rng, 3, 3, 4);
        Poly c = random_poly(rng, 3, 3, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("poly eval and diff") {
    // p = l1^2 l2 - 3 l2
    Poly p(2);
    p.add_term({2, 1}, Rational(1));
    p.add_term({0, 1}, Rational(-3));
    std::vector<Rational> pt{Rational(2), Rational(5)};
    CHECK(p.eval(pt) == Rational(4 * 5 - 15));
    CHECK(p.diff(0) == Poly::monomial(2, {1, 1}, Rational(2)));
    Poly d1(2);
    d1.add_term({2, 0}, Rational(1));
    d1.add_term({0, 0}, Rational(-3));
    CHECK(p.diff(1) == d1);
}

TEST_CASE("eval: coordinate projection, division, pole") {
    ScalarExpr l1 = ScalarExpr::variable(0);
    std::vector<Rational> p1{Rational(3, 2)};
    CHECK(l1.eval(p1) == Rational(3, 2));

    ScalarExpr inv = ScalarExpr(1) / l1;
    std::vector<Rational> p2{Rational(2)};
    CHECK(inv.eval(p2) == Rational(1, 2));

    std::vector<Rational> p0{Rational(0)};
    CHECK_THROWS_AS(inv.eval(p0), DivisionByZero);
    try {
        inv.eval(p0);
    } catch (const DivisionByZero& e) {
        CHECK(e.subexpression == "l1");
    }
}

TEST_CASE("diff: product, quotient rule, independence") {
    ScalarExpr l1 = ScalarExpr::variable(0);
    ScalarExpr l2 = ScalarExpr::variable(1);
    CHECK(expr_equal((l1 * l2).diff(0), l2, 2));
    // d/dl1 (1/l1) = -1/l1^2
    ScalarExpr inv = ScalarExpr(1) / l1;
    CHECK(expr_equal(inv.diff(0), ScalarExpr(-1) / (l1 * l1), 2));
    CHECK(inv.diff(1).is_const_zero());
}

TEST_CASE("is_zero examples") {
    ScalarExpr l1 = ScalarExpr::variable(0);
    ScalarExpr l2 = ScalarExpr::variable(1);
    CHECK(expr_zero(l1 / l1 - ScalarExpr(1), 1));
    ScalarExpr lhs = (l1 + l2) * (l1 + l2) - l1 * l1 - ScalarExpr(2) * l1 * l2 - l2 * l2;
    CHECK(expr_zero(lhs, 2));

    // l1*l2 - l2 is not identically zero; witness (2,1) evaluates to 1
    ScalarExpr nz = l1 * l2 - l2;
    ZeroOptions z = exact_opts(2);
    auto v = test_zero(nz, z);
    CHECK(!v.zero);
    std::vector<Rational> w{Rational(2), Rational(1)};
    CHECK(nz.eval(w) == Rational(1));
    // ... and it vanishes on the hyperplane l1 = 1, so sampling must not be
    // fooled by a lucky point either
    std::vector<Rational> on_plane{Rational(1), Rational(7)};
    CHECK(nz.eval(on_plane) == Rational(0));
}

TEST_CASE("exact zero-testing clears denominators without gcd") {
    ScalarExpr l1 = ScalarExpr::variable(0);
    ScalarExpr l2 = ScalarExpr::variable(1);
    // 1/l1 + 1/l2 - (l1+l2)/(l1*l2) = 0
    ScalarExpr e = ScalarExpr(1) / l1 + ScalarExpr(1) / l2 - (l1 + l2) / (l1 * l2);
    CHECK(expr_zero(e, 2));
}

TEST_CASE("term budget raises ExpansionTooLarge and sampling takes over") {
    // (l1 + l2 + l3 + 1)^9 has 220 monomials; force a tiny budget
    ScalarExpr s = ScalarExpr::variable(0) + ScalarExpr::variable(1) + ScalarExpr::variable(2) + ScalarExpr(1);
    ScalarExpr p = s;
    for (int i = 0; i < 8; ++i) p = p * s;
    ScalarExpr diff = p - p;
    // structurally nonzero tree (Sub of two big products) but identically zero
    ZeroOptions z;
    z.nvars = 3;
    z.mode = ZeroMode::ExactOnly;
    z.term_budget = 50;
    CHECK_THROWS_AS(test_zero(p * p, z), ExpansionTooLarge);
    z.mode = ZeroMode::Auto;
    auto v = test_zero(diff, z);
    CHECK(v.zero);
    CHECK(!v.exact); // fell back to sampling
    CHECK(v.note.find("sampled zero") != std::string::npos);
}

TEST_CASE("sampled never contradicts exact on random expressions") {
    SplitMix64 rng(7);
    int compared = 0;
    for (int it = 0; it < 60; ++it) {
        ScalarExpr e = random_expr(rng, 2, 4);
        ZeroOptions exact = exact_opts(2);
        ZeroOptions sam;
        sam.nvars = 2;
        sam.mode = ZeroMode::SampledOnly;
        sam.seed = it;
        ZeroVerdict ve;
        try {
            ve = test_zero(e, exact);
        } catch (const ExpansionTooLarge&) {
            continue; // exact did not run; nothing to compare
        }
        auto vs = test_zero(e, sam);
        CHECK(ve.zero == vs.zero);
        ++compared;
    }
    CHECK(compared > 40);
}

TEST_CASE("diff commutes on random expression trees of depth <= 6") {
    SplitMix64 rng(11);
    for (int it = 0; it < 25; ++it) {
        ScalarExpr e = random_expr(rng, 3, 6);
        ScalarExpr d01 = e.diff(0).diff(1);
        ScalarExpr d10 = e.diff(1).diff(0);
        // default strategy: exact with budget, sampled fallback for the trees
        // whose cleared form is too wide
        ZeroOptions z;
        z.nvars = 3;
        z.seed = 1000 + it;
        CHECK(test_zero(d01 - d10, z).zero);
    }
}

TEST_CASE("derivative matches central finite differences on polynomials") {
    SplitMix64 rng(13);
    Rational h(1, 1000000);
    for (int it = 0; it < 10; ++it) {
        Poly p = random_poly(rng, 2, 2, 4); // degree <= 2: central difference is exact
        ScalarExpr e = poly_to_expr(p);
        ScalarExpr d = e.diff(0);
        std::vector<Rational> pt{small_rational(rng), small_rational(rng)};
        std::vector<Rational> up = pt, dn = pt;
        up[0] += h;
        dn[0] -= h;
        Rational central = (e.eval(up) - e.eval(dn)) / (Rational(2) * h);
        CHECK(d.eval(pt) == central);
    }
}

TEST_CASE("hseries ring behaviour modulo truncation") {
    SplitMix64 rng(17);
    auto random_series = [&](int n) {
        HSeries<Rational> s(n, Rational(0));
        for (int k = 0; k <= n; ++k) s[k] = small_rational(rng);
        return s;
    };
    for (int it = 0; it < 30; ++it) {
        auto a = random_series(4);
        auto b = random_series(4);
        auto c = random_series(4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
    // truncation discards high orders
    HSeries<Rational> x(2, Rational(0));
    x[1] = Rational(1);
    auto sq = x * x;
    CHECK(sq[2] == Rational(1));
    auto cube = sq * x;
    CHECK(cube[0] == Rational(0));
    CHECK(cube[1] == Rational(0));
    CHECK(cube[2] == Rational(0)); // hbar^3 fell off
}

TEST_CASE("expression printing round-trips through rational form") {
    SplitMix64 rng(23);
    for (int it = 0; it < 20; ++it) {
        ScalarExpr e = random_expr(rng, 2, 4);
        // str() must be parseable; the parser lives in another module, so only
        // check the string is well formed enough to re-evaluate
        CHECK(!e.str().empty());
    }
}
