// Acceptance suite: one check per criterion, each printing a pass/fail line.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "dynrmat/dyn_tensor.hpp"
#include "dynrmat/dynamical_r.hpp"
#include "dynrmat/errors.hpp"
#include "dynrmat/expr_parser.hpp"
#include "dynrmat/formats.hpp"
#include "dynrmat/prng.hpp"
#include "dynrmat/twist_solver.hpp"

using namespace dynrmat;

namespace {

int failures = 0;
double last_seconds = 0;

void report(int criterion, const std::string& what, bool pass) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what << "\n";
    if (!pass) ++failures;
}

template <class F>
bool timed(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = fn();
    last_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok;
}

ZeroOptions exact_opts(int nvars) {
    ZeroOptions z;
    z.nvars = nvars;
    z.mode = ZeroMode::ExactOnly;
    return z;
}

bool mv_zero(const Multivector& m, int nvars) { return is_zero(m, exact_opts(nvars)); }

bool residuals_vanish(const DynamicalR& r) {
    int l = r.dec.base_dim();
    if (!mv_zero(cdybe_residual(r), l)) return false;
    BaseStructure bs = base_structure(r.dec);
    for (int i = 0; i < l; ++i)
        if (!mv_zero(equivariance_residual(r, bs, i), l)) return false;
    return true;
}

Rational small_rational(SplitMix64& rng) {
    long num = rng.range(-6, 6);
    long den = rng.range(1, 4);
    return Rational(num, den);
}

Poly random_poly(SplitMix64& rng, int nvars, unsigned max_degree, int terms) {
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        unsigned budget = max_degree;
        for (int i = 0; i < nvars; ++i) {
            unsigned d = static_cast<unsigned>(rng.below(budget + 1));
            e[i] = d;
            budget -= d;
        }
        p.add_term(e, small_rational(rng));
    }
    return p;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    bool ok = timed([&] {
        for (const char* name : {"sl2", "sl3", "heisenberg(1,1)", "heisenberg(2,1)"}) {
            BuiltinAlgebra b = builtin(name);
            DynamicalR r = construct_r(b.dec);
            if (!residuals_vanish(r)) return false;
        }
        return true;
    });
    report(1, "constructed r solves cdybe + equivariance on sl2, sl3, heisenberg(1,1), heisenberg(2,1)", ok);
    report(1, "construction suite runs in < 10 s (took " + std::to_string(last_seconds) + " s)",
           last_seconds < 10.0);
}

void criterion_2() {
    bool ok = true;
    for (const char* name : {"sl2", "sl3"}) {
        BuiltinAlgebra b = builtin(name);
        DynamicalR built = construct_r(b.dec);
        DynamicalR closed = closed_form_simple_cartan(name);
        int l = b.dec.base_dim();
        Multivector diff = built.r - closed.r;
        ok = ok && mv_zero(diff, l);
    }
    report(2, "construct_r equals the closed form on sl2 and sl3, coefficient by coefficient", ok);

    // sl3 with the larger reductive base l: restriction to h*
    bool ok2 = true;
    BuiltinAlgebra b = sl3_reductive_base(1);
    DynamicalR built = construct_r(b.dec);
    DynamicalR closed = closed_form_sl3_restricted(1);
    SplitMix64 rng(2024);
    int hits = 0;
    while (hits < 20) {
        std::vector<Rational> pt{small_rational(rng), small_rational(rng), Rational(0), Rational(0)};
        try {
            for (const auto& [t, c] : built.r.terms())
                if (c.eval(pt) != closed.r.coefficient(t).eval(pt)) ok2 = false;
            for (const auto& [t, c] : closed.r.terms())
                if (c.eval(pt) != built.r.coefficient(t).eval(pt)) ok2 = false;
            ++hits;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    report(2, "sl3 over the reductive base restricts to the reduced-root closed form at 20 points", ok2);
}

void criterion_3() {
    bool ok = true, okdet = true;
    for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        DynamicalR r = closed_form_heisenberg(m, n);
        ok = ok && residuals_vanish(r);
        auto b = builtin("heisenberg(" + std::to_string(m) + "," + std::to_string(n) + ")");
        int l = b.dec.base_dim();
        std::vector<Rational> pt(l, Rational(0));
        pt[l - 1] = Rational(3);
        FatnessResult f = fatness(b.dec, pt);
        Exponents e(l, 0);
        e[l - 1] = static_cast<unsigned>(2 * m);
        okdet = okdet && (f.det_symbolic == Poly::monomial(l, e, Rational(1)));
    }
    report(3, "heisenberg closed forms pass both residuals for (1,1), (2,1), (2,2)", ok);
    report(3, "fatness determinant equals x^(2m) exactly", okdet);
}

void criterion_4() {
    // r-matrix perturbations
    BuiltinAlgebra b = builtin("sl2");
    BaseStructure bs = base_structure(b.dec);
    ScalarExpr l1 = ScalarExpr::variable(0);
    int flagged = 0, total = 0;
    IndexTuple tuples[] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& t : tuples) {
        for (int kind = 0; kind < 2; ++kind) {
            DynamicalR r = construct_r(b.dec);
            r.r.add_term(t, kind == 0 ? l1 : ScalarExpr(1));
            ++total;
            bool caught = !mv_zero(cdybe_residual(r), 1);
            for (int i = 0; i < b.dec.base_dim() && !caught; ++i)
                caught = !mv_zero(equivariance_residual(r, bs, i), 1);
            if (caught) ++flagged;
        }
    }
    report(4, "all " + std::to_string(total) + " single-term r perturbations flagged", flagged == total);

    // structure-constant perturbations
    int sflagged = 0, stotal = 0;
    for (const auto& [ij, terms] : b.alg->raw_entries()) {
        for (const auto& [k, c] : terms) {
            auto alg = std::make_shared<LieAlgebra>(*b.alg);
            BracketTerms t = alg->bracket_basis(ij.first, ij.second);
            for (auto& [kk, cc] : t)
                if (kk == k) cc += Rational(1);
            alg->set_raw(ij.first, ij.second, t);
            ++stotal;
            if (!alg->validate().ok()) ++sflagged;
        }
    }
    report(4, "all " + std::to_string(stotal) + " structure-constant perturbations flagged",
           sflagged == stotal && stotal == 6);
}

void criterion_5() {
    auto h = std::make_shared<LieAlgebra>(builtin("heisenberg(1,1)").dec.base_algebra());
    PBWContext ctx(h, 4);
    bool ok = timed([&] {
        SplitMix64 rng(505);
        auto series = [&](const Poly& p) {
            HSeries<Poly> s(4, Poly(3));
            s[0] = p;
            return s;
        };
        for (int it = 0; it < 50; ++it) {
            Poly f = random_poly(rng, 3, 3, 3);
            Poly g = random_poly(rng, 3, 3, 3);
            Poly k = random_poly(rng, 3, 3, 3);
            if (!(star_series(ctx, star(ctx, f, g), series(k)) ==
                  star_series(ctx, series(f), star(ctx, g, k))))
                return false;
            if (!(star(ctx, f, g)[1] == lie_poisson(*h, f, g) * Rational(1, 2))) return false;
        }
        // Cor-3.6 shift morphism, 50 pairs
        for (int it = 0; it < 50; ++it) {
            Poly f = random_poly(rng, 3, 2, 3);
            Poly g = random_poly(rng, 3, 2, 3);
            ShiftSeries lhs;
            HSeries<Poly> fg = star(ctx, f, g);
            for (int k = 0; k <= 4; ++k) {
                ShiftSeries part = shift_poly(ctx, fg[k]);
                for (const auto& [w, series2] : part.terms) {
                    auto it2 = lhs.terms.find(w);
                    if (it2 == lhs.terms.end()) it2 = lhs.terms.emplace(w, HSeries<Poly>(4, Poly(3))).first;
                    it2->second += series2.shifted(k);
                }
            }
            if (!equal(lhs, mul(ctx, shift_poly(ctx, f), shift_poly(ctx, g)))) return false;
        }
        return true;
    });
    report(5, "star associativity, half-Poisson first order, shift morphism (50 instances each)", ok);
    report(5, "PBW suite runs in < 60 s (took " + std::to_string(last_seconds) + " s)",
           last_seconds < 60.0);
}

void criterion_6() {
    auto ctx = make_qcontext(builtin("heisenberg(1,1)").dec, 4);
    ZeroOptions z = exact_opts(3);
    SplitMix64 rng(606);
    bool ok = true;
    auto random_unital = [&](bool rational_coeff) {
        DynTensor t = DynTensor::unit(ctx, 2);
        for (int ord = 1; ord <= 2; ++ord) {
            LegTuple legs(2);
            for (int s = 0; s < 2; ++s) {
                int len = static_cast<int>(rng.below(2));
                for (int i = 0; i < len; ++i) legs[s].push_back(static_cast<int>(rng.below(5)));
            }
            ScalarExpr c = ScalarExpr::constant(small_rational(rng));
            if (rational_coeff && rng.below(2) == 0)
                c = c / (ScalarExpr::variable(2) + ScalarExpr(1 + (int)rng.below(3)));
            else if (rng.below(2) == 0)
                c = c * ScalarExpr::variable(static_cast<int>(rng.below(3)));
            t.add_term(ord, legs, c);
        }
        return t;
    };
    for (int it = 0; it < 20; ++it) {
        DynTensor f = place(random_unital(it % 2 == 0), 2, 3, 3);
        DynTensor g = place(random_unital(it % 2 == 1), 2, 3, 3);
        if (!is_zero(shift_insert(mul(f, g), 1) - mul(shift_insert(f, 1), shift_insert(g, 1)), z))
            ok = false;
    }
    report(6, "shift_insert commutes with mul on 20 randomized tensors", ok);

    bool ok2 = true;
    for (int it = 0; it < 20; ++it) {
        DynTensor f = place(random_unital(it % 2 == 0), 2, 3, 3);
        if (!is_zero(shift_insert(invert(f), 1) - invert(shift_insert(f, 1)), z)) ok2 = false;
    }
    report(6, "shift_insert commutes with invert on 20 randomized tensors", ok2);
}

void criterion_7() {
    auto ctx = make_qcontext(builtin("abelian(4)").dec, 4);
    ZeroOptions z = exact_opts(4);
    SplitMix64 rng(707);
    std::vector<DynTensor> corpus;
    corpus.push_back(DynTensor::unit(ctx, 2));
    for (int i = 0; i < 3; ++i) {
        std::vector<ExpTwistTerm> terms;
        for (int j = 0; j < 2; ++j) {
            Rational t = small_rational(rng);
            if (t.is_zero()) t = Rational(1);
            terms.push_back({t, static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))});
        }
        corpus.push_back(exp_twist(ctx, terms));
    }
    bool ok = true;
    for (const auto& f : corpus) {
        if (!is_zero(cocycle_residual(f), z)) ok = false;
        auto [c1, c2] = counit_check(f);
        if (!is_zero(c1, z) || !is_zero(c2, z)) ok = false;
        if (!is_zero(qdybe_residual(r_from_twist(f)), z)) ok = false;
    }
    report(7, "cocycle, counit and qdybe residuals vanish at hbar^4 for the twist corpus", ok);

    // perturbed twist: nonzero cocycle residual detected at hbar^2
    auto alg = std::make_shared<LieAlgebra>(3, std::vector<std::string>{"x", "y", "h"});
    Decomposition dec{alg, {2}, {0, 1}};
    auto pctx = make_qcontext(dec, 4);
    DynTensor bad = DynTensor::unit(pctx, 2);
    bad.add_term(1, {Word{0}, Word{1}}, ScalarExpr::variable(0));
    DynTensor res = cocycle_residual(bad);
    ZeroOptions z1 = exact_opts(1);
    bool order2_nonzero = false;
    for (const auto& [legs, c] : res.order(2))
        if (!test_zero(c, z1).zero) order2_nonzero = true;
    bool lower_zero = res.order(0).empty();
    for (const auto& [legs, c] : res.order(1))
        if (!test_zero(c, z1).zero) lower_zero = false;
    report(7, "perturbed twist fails the cocycle condition exactly at hbar^2", order2_nonzero && lower_zero);
}

void criterion_8() {
    auto ctx = make_qcontext(builtin("abelian(4)").dec, 4);
    ZeroOptions z = exact_opts(4);
    SplitMix64 rng(808);
    std::vector<DynTensor> corpus;
    corpus.push_back(DynTensor::unit(ctx, 2));
    for (int i = 0; i < 3; ++i) {
        std::vector<ExpTwistTerm> terms;
        for (int j = 0; j < 2; ++j) {
            Rational t = small_rational(rng);
            if (t.is_zero()) t = Rational(1);
            terms.push_back({t, static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))});
        }
        corpus.push_back(exp_twist(ctx, terms));
    }
    bool ok = true;
    for (const auto& f : corpus) {
        LemmaReport lr = lemma_check(f);
        if (!is_zero(lr.res_delta_left, z)) ok = false;
        if (!is_zero(lr.res_delta_right, z)) ok = false;
        if (!is_zero(lr.res_conjugation, z)) ok = false;
    }
    report(8, "twisted-coproduct and phi-conjugation identities hold at hbar^4 on the corpus", ok);
}

void criterion_9() {
    bool ok = true;
    for (const char* name : {"sl2", "heisenberg(1,1)"}) {
        BuiltinAlgebra b = builtin(name);
        auto ctx = make_qcontext(b.dec, 2);
        ZeroOptions z = exact_opts(b.dec.base_dim());
        DynamicalR r = construct_r(b.dec);
        DynTensor rt = DynTensor::unit(ctx, 2) + r_as_tensor(ctx, r).hbar_shifted(1);
        DynTensor res = qdybe_residual(rt);
        for (const auto& [legs, c] : res.order(0))
            if (!test_zero(c, z).zero) ok = false;
        for (const auto& [legs, c] : res.order(1))
            if (!test_zero(c, z).zero) ok = false;
        if (!is_zero(alt3(res, 2, z), z)) ok = false;
    }
    report(9, "R = 1 + hbar r has vanishing hbar^0, hbar^1 and antisymmetrized hbar^2 residuals", ok);

    // non-cdybe bivector produces a nonzero antisymmetrized hbar^2 coefficient
    BuiltinAlgebra b = builtin("sl2");
    auto ctx = make_qcontext(b.dec, 2);
    ZeroOptions z = exact_opts(1);
    DynamicalR bad{b.dec, Multivector(b.alg)};
    bad.r.add_term({1, 2}, ScalarExpr(1));
    DynTensor rt = DynTensor::unit(ctx, 2) + r_as_tensor(ctx, bad).hbar_shifted(1);
    Multivector anti = alt3(qdybe_residual(rt), 2, z);
    bool flagged = !is_zero(anti, z);
    bool matches = is_zero(anti + cdybe_residual(bad), z);
    report(9, "non-cdybe bivector is flagged and matches the exterior-algebra residual", flagged && matches);
}

void criterion_10() {
    auto ctx = make_qcontext(builtin("sl2").dec, 2);
    ScalarExpr inv_l1 = ScalarExpr(1) / ScalarExpr::variable(0);
    std::vector<AnsatzTerm> ansatz{
        {inv_l1, Word{1}, Word{2}},
        {inv_l1, Word{2}, Word{1}},
    };
    DynTensor one = DynTensor::unit(ctx, 2);
    TwistSolution sol = solve_twist_order(one, ansatz, 1);
    bool ok = sol.feasible;
    if (ok) {
        std::vector<std::vector<Rational>> members;
        members.push_back(sol.particular);
        for (const auto& v : sol.kernel) {
            auto m = sol.particular;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += v[i];
            members.push_back(m);
        }
        ZeroOptions z = exact_opts(1);
        for (const auto& m : members) {
            DynTensor f = apply_ansatz(one, ansatz, m, 1);
            DynTensor res = cocycle_residual(f);
            for (int k = 0; k <= 1; ++k)
                for (const auto& [legs, c] : res.order(k))
                    if (!test_zero(c, z).zero) ok = false;
        }
    }
    report(10, "order-1 twist solver returns a nonempty set of cocycle solutions for the sl2 r", ok);

    TwistSolution again = solve_twist_order(one, ansatz, 1);
    report(10, "solution set is deterministic across runs",
           again.feasible == sol.feasible && again.particular == sol.particular &&
               again.kernel == sol.kernel);
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(DYNRMAT_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

void criterion_11() {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "dynrmat_acceptance";
    fs::create_directories(tmp);
    std::string data = DYNRMAT_DATA_DIR;

    // criterion-1-style command
    std::string r1 = (tmp / "c1_a.json").string(), r2 = (tmp / "c1_b.json").string();
    bool ok1 = run_cli("check-cdybe --algebra " + data + "/sl2.json --rmatrix constructed --seed 5 --out " + r1) == 0;
    ok1 = ok1 && run_cli("check-cdybe --algebra " + data + "/sl2.json --rmatrix constructed --seed 5 --out " + r2) == 0;
    ok1 = ok1 && read_file(r1) == read_file(r2);

    // criterion-7-style command: cocycle + qdybe of an exponential twist
    auto b = builtin("abelian(4)");
    auto ctx = make_qcontext(b.dec, 4);
    std::string alg_path = (tmp / "abelian_4.json").string();
    write_file(alg_path, algebra_to_json(*b.alg, b.dec).dump(2) + "\n");
    DynTensor f = exp_twist(ctx, {{Rational(1), 0, 1}, {Rational(-2, 3), 2, 3}});
    std::string twist_path = (tmp / "exp_twist.json").string();
    write_file(twist_path, twist_to_json(f).dump(2) + "\n");

    std::string q1 = (tmp / "c7_a.json").string(), q2 = (tmp / "c7_b.json").string();
    std::string cmd7 = "check-qdybe --algebra " + alg_path + " --twist " + twist_path + " --order 4 --seed 5 --out ";
    bool ok2 = run_cli(cmd7 + q1) == 0;
    ok2 = ok2 && run_cli(cmd7 + q2) == 0;
    ok2 = ok2 && read_file(q1) == read_file(q2);

    std::string c1 = (tmp / "cc_a.json").string(), c2 = (tmp / "cc_b.json").string();
    std::string cmdc = "check-cocycle --algebra " + alg_path + " --twist " + twist_path + " --order 4 --seed 5 --out ";
    bool ok3 = run_cli(cmdc + c1) == 0;
    ok3 = ok3 && run_cli(cmdc + c2) == 0;
    ok3 = ok3 && read_file(c1) == read_file(c2);

    report(11, "byte-identical reports across two seeded runs (construction + twist pipelines)",
           ok1 && ok2 && ok3);
}

} // namespace

int main() {
    using CriterionFn = void (*)();
    CriterionFn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                              criterion_5, criterion_6, criterion_7, criterion_8,
                              criterion_9, criterion_10, criterion_11};
    for (auto fn : criteria) {
        try {
            fn();
        } catch (const std::exception& e) {
            std::cout << "[FAIL] criterion raised: " << e.what() << "\n";
            ++failures;
        }
    }
    if (failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " acceptance check(s) failed\n";
    return 1;
}
