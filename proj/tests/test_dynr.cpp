#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrmat/dynamical_r.hpp"
#include "dynrmat/errors.hpp"
#include "dynrmat/prng.hpp"
#include "test_util.hpp"

using namespace dynrmat;
using namespace testutil;

namespace {

bool residuals_vanish(const DynamicalR& r, int nvars) {
    if (!multivector_zero(cdybe_residual(r), nvars)) return false;
    BaseStructure bs = base_structure(r.dec);
    for (int i = 0; i < r.dec.base_dim(); ++i)
        if (!multivector_zero(equivariance_residual(r, bs, i), nvars)) return false;
    return true;
}

} // namespace

TEST_CASE("construct_r on sl2: a = [[0, l1], [-l1, 0]], r = -(1/l1) e^f") {
    auto b = builtin("sl2");
    DynamicalR r = construct_r(b.dec);
    REQUIRE(r.a.has_value());
    CHECK((*r.a)[0][1] == Poly::variable(1, 0));
    CHECK((*r.a)[1][0] == -Poly::variable(1, 0));
    CHECK((*r.a)[0][0].is_zero());
    CHECK(r.det == Poly::monomial(1, {2}, Rational(1)));

    ScalarExpr expected = ScalarExpr(-1) / ScalarExpr::variable(0);
    CHECK(expr_equal(r.r.coefficient({1, 2}), expected, 1));
    CHECK(r.r.terms().size() == 1);
}

TEST_CASE("construct_r on heisenberg(1,1): r = -(1/x) p1^q1") {
    auto b = builtin("heisenberg(1,1)");
    DynamicalR r = construct_r(b.dec);
    // base coordinates: l1 ~ p2, l2 ~ q2, l3 ~ c; x is the central one
    ScalarExpr expected = ScalarExpr(-1) / ScalarExpr::variable(2);
    int p1 = b.alg->index_of("p1"), q1 = b.alg->index_of("q1");
    CHECK(expr_equal(r.r.coefficient({p1, q1}), expected, 3));
    CHECK(r.r.terms().size() == 1);
}

TEST_CASE("cdybe and equivariance residuals vanish for every builtin construction") {
    for (const char* name : {"sl2", "sl3", "heisenberg(1,1)", "heisenberg(2,1)"}) {
        BuiltinAlgebra b = builtin(name);
        DynamicalR r = construct_r(b.dec);
        INFO(name);
        CHECK(residuals_vanish(r, b.dec.base_dim()));
    }
}

TEST_CASE("constant bivector e^f on sl2 fails the cdybe: residual -h^e^f") {
    auto b = builtin("sl2");
    DynamicalR r{b.dec, Multivector(b.alg)};
    r.r.add_term({1, 2}, ScalarExpr(1));
    Multivector res = cdybe_residual(r);
    CHECK(expr_equal(res.coefficient({0, 1, 2}), ScalarExpr(-1), 1));
}

TEST_CASE("equivariance residual flags a non-equivariant bivector") {
    auto b = builtin("sl2");
    BaseStructure bs = base_structure(b.dec);
    DynamicalR bad{b.dec, Multivector(b.alg)};
    bad.r.add_term({0, 1}, ScalarExpr(-1) / ScalarExpr::variable(0)); // -(1/l1) h^e
    Multivector res = equivariance_residual(bad, bs, 0);
    CHECK(!multivector_zero(res, 1)); // ad_h(h^e) = 2 h^e does not cancel
}

TEST_CASE("every single-coefficient perturbation of the sl2 r is flagged") {
    auto b = builtin("sl2");
    BaseStructure bs = base_structure(b.dec);
    ScalarExpr l1 = ScalarExpr::variable(0);
    IndexTuple tuples[] = {{0, 1}, {0, 2}, {1, 2}};
    int flagged = 0, total = 0;
    for (const auto& t : tuples) {
        for (int kind = 0; kind < 2; ++kind) {
            DynamicalR r = construct_r(b.dec);
            ScalarExpr bump = kind == 0 ? l1 : ScalarExpr(1);
            r.r.add_term(t, bump);
            ++total;
            bool caught = !multivector_zero(cdybe_residual(r), 1);
            if (!caught) {
                for (int i = 0; i < b.dec.base_dim() && !caught; ++i)
                    caught = !multivector_zero(equivariance_residual(r, bs, i), 1);
            }
            if (caught) ++flagged;
        }
    }
    CHECK(total == 6);
    CHECK(flagged == total);
}

TEST_CASE("closed forms match the constructor where both exist") {
    // sl2: single positive root
    {
        auto b = builtin("sl2");
        DynamicalR built = construct_r(b.dec);
        DynamicalR closed = closed_form_simple_cartan("sl2");
        CHECK(multivector_equal(built.r, closed.r, 1));
    }
    // sl3: three positive roots, coefficients 1/l1, 1/l2, 1/(l1+l2)
    {
        auto b = builtin("sl3");
        DynamicalR built = construct_r(b.dec);
        DynamicalR closed = closed_form_simple_cartan("sl3");
        CHECK(multivector_equal(built.r, closed.r, 2));
        ScalarExpr l1 = ScalarExpr::variable(0), l2 = ScalarExpr::variable(1);
        CHECK(expr_equal(closed.r.coefficient({2, 5}), ScalarExpr(-1) / l1, 2));
        CHECK(expr_equal(closed.r.coefficient({3, 6}), ScalarExpr(-1) / l2, 2));
        CHECK(expr_equal(closed.r.coefficient({4, 7}), ScalarExpr(-1) / (l1 + l2), 2));
    }
    // heisenberg(2,1): -(1/x)(p1^q1 + p2^q2)
    {
        auto b = builtin("heisenberg(2,1)");
        DynamicalR built = construct_r(b.dec);
        DynamicalR closed = closed_form_heisenberg(2, 1);
        CHECK(multivector_equal(built.r, closed.r, 3));
        CHECK(closed.r.terms().size() == 2);
    }
}

TEST_CASE("closed forms pass both residuals") {
    for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        DynamicalR r = closed_form_heisenberg(m, n);
        INFO("heisenberg(" << m << "," << n << ")");
        CHECK(residuals_vanish(r, r.dec.base_dim()));
    }
    CHECK(residuals_vanish(closed_form_simple_cartan("sl2"), 1));
    CHECK(residuals_vanish(closed_form_simple_cartan("sl3"), 2));
}

TEST_CASE("sl3 with reductive base: constructed r restricted to h* matches the reduced-root closed form") {
    BuiltinAlgebra b = sl3_reductive_base(1);
    DynamicalR built = construct_r(b.dec);
    DynamicalR closed = closed_form_sl3_restricted(1);
    // on lambda in h*: xi-coordinates (duals of e1, f1 in the base) are zero
    SplitMix64 rng(61);
    int hits = 0;
    while (hits < 20) {
        std::vector<Rational> pt{small_rational(rng), small_rational(rng), Rational(0), Rational(0)};
        try {
            for (const auto& [t, c] : built.r.terms()) {
                Rational lhs = c.eval(pt);
                Rational rhs = closed.r.coefficient(t).eval(pt);
                CHECK(lhs == rhs);
            }
            for (const auto& [t, c] : closed.r.terms()) {
                Rational rhs = c.eval(pt);
                Rational lhs = built.r.coefficient(t).eval(pt);
                CHECK(lhs == rhs);
            }
            ++hits;
        } catch (const DivisionByZero&) {
            continue; // pole of 1/l2 or 1/(l1+l2); redraw
        }
    }
}

TEST_CASE("sl3 over the full nonabelian base solves both residual equations") {
    // base l = h (+) g_a (+) g_{-a} is nonabelian: the equivariance residual
    // only vanishes through cancellation between the ad term and the
    // Lie-Poisson f_ij term, and the xi-coordinates stay live throughout
    BuiltinAlgebra b = sl3_reductive_base(1);
    DynamicalR r = construct_r(b.dec);
    CHECK(r.det->degree() == 4);
    ZeroOptions z;
    z.nvars = 4;
    z.mode = ZeroMode::ExactOnly;
    z.term_budget = 2000000;
    CHECK(is_zero(cdybe_residual(r), z));
    BaseStructure bs = base_structure(b.dec);
    // the base structure itself is nonabelian: f(e1-slot, f1-slot) = l1
    CHECK(expr_equal(bs(2, 3), ScalarExpr::variable(0), 4));
    for (int i = 0; i < 4; ++i) CHECK(is_zero(equivariance_residual(r, bs, i), z));
}

TEST_CASE("c(lambda) a(lambda) = identity as an expression identity") {
    for (const char* name : {"sl2", "sl3", "heisenberg(1,1)"}) {
        BuiltinAlgebra b = builtin(name);
        DynamicalR r = construct_r(b.dec);
        int m = b.dec.complement_dim();
        int l = b.dec.base_dim();
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                ScalarExpr acc(0);
                for (int k = 0; k < m; ++k) acc += (*r.c)[i][k] * poly_to_expr((*r.a)[k][j]);
                INFO(name << " entry " << i << "," << j);
                CHECK(expr_zero(acc - ScalarExpr(i == j ? 1 : 0), l));
            }
        }
    }
}

TEST_CASE("dc/dl = -c (da/dl) c at random nonsingular points") {
    auto b = builtin("sl3");
    DynamicalR r = construct_r(b.dec);
    int m = b.dec.complement_dim();
    int l = b.dec.base_dim();
    SplitMix64 rng(67);
    int done = 0;
    while (done < 10) {
        std::vector<Rational> pt(l);
        for (auto& x : pt) x = small_rational(rng);
        if (r.det->eval(pt).is_zero()) continue;
        for (int var = 0; var < l; ++var) {
            // evaluate both sides entrywise
            std::vector<std::vector<Rational>> cval(m, std::vector<Rational>(m)),
                dc(m, std::vector<Rational>(m)), da(m, std::vector<Rational>(m));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    cval[i][j] = (*r.c)[i][j].eval(pt);
                    dc[i][j] = (*r.c)[i][j].diff(var).eval(pt);
                    da[i][j] = (*r.a)[i][j].diff(var).eval(pt);
                }
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    Rational rhs(0);
                    for (int s = 0; s < m; ++s)
                        for (int t = 0; t < m; ++t) rhs += cval[i][s] * da[s][t] * cval[t][j];
                    CHECK(dc[i][j] == -rhs);
                }
            }
        }
        ++done;
    }
}

TEST_CASE("fatness: sl2 singular exactly at 0, heisenberg det = x^{2m}") {
    auto b = builtin("sl2");
    auto f1 = fatness(b.dec, {Rational(1)});
    CHECK(f1.fat);
    CHECK(f1.det_value == Rational(1));
    auto f0 = fatness(b.dec, {Rational(0)});
    CHECK(!f0.fat);
    CHECK(f0.det_value == Rational(0));

    for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        BuiltinAlgebra hb = builtin("heisenberg(" + std::to_string(m) + "," + std::to_string(n) + ")");
        int l = hb.dec.base_dim();
        std::vector<Rational> pt(l, Rational(0));
        pt[l - 1] = Rational(1); // x = 1
        auto f = fatness(hb.dec, pt);
        INFO("heisenberg(" << m << "," << n << ")");
        CHECK(f.fat);
        CHECK(f.det_value == Rational(1));
        Exponents e(l, 0);
        e[l - 1] = static_cast<unsigned>(2 * m);
        CHECK(f.det_symbolic == Poly::monomial(l, e, Rational(1)));
    }
}

TEST_CASE("degenerate decomposition raises DegenerateEverywhere") {
    // abelian complement pairs to a zero matrix
    auto ab = builtin("abelian(4)");
    Decomposition dec{ab.alg, {0, 1}, {2, 3}};
    CHECK_THROWS_AS(construct_r(dec), DegenerateEverywhere);

    // odd-dimensional complement: skew pairing has identically zero determinant
    auto ab3 = builtin("abelian(3)");
    Decomposition odd{ab3.alg, {0, 1}, {2}};
    CHECK_THROWS_AS(construct_r(odd), DegenerateEverywhere);
}

TEST_CASE("point-evaluation mode covers complements past the symbolic bound") {
    auto big = builtin("heisenberg(5,1)"); // |m| = 10 > 8
    CHECK_THROWS_AS(construct_r(big.dec), Error);
    int l = big.dec.base_dim();
    std::vector<Rational> pt(l, Rational(0));
    pt[l - 1] = Rational(2); // x = 2
    PointR pr = evaluate_r_at(big.dec, pt);
    // c = a^{-1} exactly; with a = x J the inverse pairs p_i with q_i as -1/x
    int m = big.dec.complement_dim();
    for (int i = 0; i < m; ++i) {
        Rational acc(0);
        for (int k = 0; k < m; ++k) acc += pr.c[i][k] * pr.a[k][i];
        CHECK(acc == Rational(1));
    }
    CHECK(pr.c[0][5] == Rational(-1, 2)); // (p1, q1) slot of the inverse
    // and the point-mode agrees with the symbolic inverse where both exist
    auto small = builtin("heisenberg(2,1)");
    DynamicalR r = construct_r(small.dec);
    std::vector<Rational> spt{Rational(1, 3), Rational(-2), Rational(5)};
    PointR spr = evaluate_r_at(small.dec, spt);
    for (int i = 0; i < small.dec.complement_dim(); ++i)
        for (int j = 0; j < small.dec.complement_dim(); ++j)
            CHECK(spr.c[i][j] == (*r.c)[i][j].eval(spt));
}

TEST_CASE("parameter shift removes the singularity at 0 and keeps the cdybe") {
    auto b = builtin("sl2");
    DynamicalR r = construct_r(b.dec);
    DynamicalR shifted = shift_parameter(r, {Rational(-1)}); // r(l1 + 1)
    std::vector<Rational> zero_pt{Rational(0)};
    CHECK(shifted.r.coefficient({1, 2}).eval(zero_pt) == Rational(-1));
    CHECK(multivector_zero(cdybe_residual(shifted), 1));
    // equivariance survives too: the base is abelian, f = 0
    BaseStructure bs = base_structure(b.dec);
    CHECK(multivector_zero(equivariance_residual(shifted, bs, 0), 1));
}

TEST_CASE("non-degeneracy is decided only for constructor-built r") {
    auto b = builtin("sl2");
    DynamicalR r = construct_r(b.dec);
    CHECK(nondegenerate_at(r, {Rational(2)}));
    CHECK(!nondegenerate_at(r, {Rational(0)}));
    DynamicalR general{b.dec, Multivector(b.alg)};
    general.r.add_term({1, 2}, ScalarExpr(1));
    CHECK_THROWS_AS(nondegenerate_at(general, {Rational(2)}), Error);
}

TEST_CASE("base structure of the heisenberg base: f(p2,q2) = x") {
    auto b = builtin("heisenberg(1,1)");
    BaseStructure bs = base_structure(b.dec);
    // local base order p2, q2, c with coordinates l1, l2, l3
    CHECK(expr_equal(bs(0, 1), ScalarExpr::variable(2), 3));
    CHECK(expr_equal(bs(1, 0), -ScalarExpr::variable(2), 3));
    CHECK(bs(0, 2).is_const_zero());
    CHECK(bs(2, 1).is_const_zero());
}
