// dynrmat: constructs triangular dynamical r-matrices from fat reductive
// decompositions, verifies the classical dynamical Yang-Baxter equation and
// H-equivariance, and checks twisted-cocycle / quantum dynamical Yang-Baxter
// identities order by order in the formal parameter.
//
// Commands: validate, construct-r, check-cdybe, check-equivariance, fatness,
// star, check-cocycle, check-qdybe, derive-R, check-lemma, solve-twist.
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse/validation error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynrmat/dyn_tensor.hpp"
#include "dynrmat/dynamical_r.hpp"
#include "dynrmat/errors.hpp"
#include "dynrmat/expr_parser.hpp"
#include "dynrmat/formats.hpp"
#include "dynrmat/report.hpp"
#include "dynrmat/twist_solver.hpp"

using namespace dynrmat;

namespace {

struct CommonOpts {
    std::string algebra_path;
    std::string rmatrix_spec; // path or "constructed"
    std::string twist_path;
    std::string ansatz_path;
    int order = 4;
    std::string zero_test = "auto"; // auto | exact | sampled
    std::uint64_t seed = 0;
    std::string point_text;
    std::string out_path;
    std::string rout_path;
    int korder = 1;
    bool timing = false;
    std::vector<std::string> exprs; // positionals for `star`
};

int thread_count() {
    const char* env = std::getenv("THREADS");
    if (!env) return 1;
    try {
        std::size_t pos = 0;
        int n = std::stoi(env, &pos);
        if (pos != std::string(env).size() || n < 1) throw Error("");
        return n;
    } catch (...) {
        throw Error(std::string("THREADS must be a positive integer, got '") + env + "'");
    }
}

ZeroOptions zero_opts(const CommonOpts& o, int nvars) {
    ZeroOptions z;
    z.nvars = nvars;
    z.seed = o.seed;
    if (o.zero_test == "exact") z.mode = ZeroMode::ExactOnly;
    else if (o.zero_test == "sampled") z.mode = ZeroMode::SampledOnly;
    else z.mode = ZeroMode::Auto;
    return z;
}

std::vector<Rational> parse_point(const std::string& text, int l) {
    std::vector<Rational> pt;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            pt.push_back(Rational::parse(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) pt.push_back(Rational::parse(cur));
    if (static_cast<int>(pt.size()) != l)
        throw Error("--point needs " + std::to_string(l) + " coordinates, got " + std::to_string(pt.size()));
    return pt;
}

BuiltinAlgebra load_algebra(const CommonOpts& o, Report& rep) {
    if (o.algebra_path.empty()) throw Error("--algebra is required for this command");
    std::string text = read_file(o.algebra_path);
    rep.inputs["algebra:" + o.algebra_path] = fnv1a_hex(text);
    return algebra_from_json(parse_json(text));
}

DynamicalR load_rmatrix(const CommonOpts& o, const BuiltinAlgebra& b, Report& rep) {
    if (o.rmatrix_spec.empty() || o.rmatrix_spec == "constructed") return construct_r(b.dec);
    std::string text = read_file(o.rmatrix_spec);
    rep.inputs["rmatrix:" + o.rmatrix_spec] = fnv1a_hex(text);
    return rmatrix_from_json(parse_json(text), b.dec);
}

DynTensor load_twist(const CommonOpts& o, const QContextPtr& ctx, Report& rep) {
    if (o.twist_path.empty()) throw Error("--twist is required for this command");
    std::string text = read_file(o.twist_path);
    rep.inputs["twist:" + o.twist_path] = fnv1a_hex(text);
    return twist_from_json(parse_json(text), ctx);
}

void add_multivector_checks(Report& rep, const std::string& prefix, const Multivector& mv,
                            const ZeroOptions& z) {
    if (mv.terms().empty()) {
        rep.add_check(prefix + "[0]", true, "exact", "no terms");
        return;
    }
    const LieAlgebra& alg = *mv.algebra();
    for (const auto& [t, c] : mv.terms()) {
        std::string name = prefix + "[";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) name += "^";
            name += alg.label(t[i]);
        }
        name += "]";
        rep.add_check(name, test_zero(c, z));
    }
}

void add_tensor_checks(Report& rep, const std::string& prefix, const DynTensor& t,
                       const ZeroOptions& z, int threads) {
    auto checks = check_zero(t, z, threads);
    if (checks.empty()) {
        rep.add_check(prefix + "[0]", true, "exact", "no terms");
        return;
    }
    for (const auto& c : checks) {
        Report::Check rc;
        rc.name = prefix + "[h^" + std::to_string(c.order) + "|" + c.legs + "]";
        rc.pass = c.verdict.zero;
        rc.mode = c.verdict.exact ? "exact" : "sampled";
        rc.note = c.verdict.note;
        if (c.verdict.witness) {
            for (const auto& x : *c.verdict.witness) rc.witness.push_back(x.str());
            if (c.verdict.witness_value) rc.witness_value = c.verdict.witness_value->str();
        }
        rep.checks.push_back(std::move(rc));
    }
}

int finish(const CommonOpts& o, Report& rep, std::chrono::steady_clock::time_point t0) {
    rep.timing_enabled = o.timing;
    if (o.timing) {
        auto dt = std::chrono::steady_clock::now() - t0;
        rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }
    for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "\n";
    std::string text = rep.serialize();
    if (o.out_path.empty()) std::cout << text;
    else write_file(o.out_path, text);
    return rep.all_passed() ? 0 : 1;
}

// ---- command handlers ------------------------------------------------------

int cmd_validate(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "validate";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;

    std::string text = read_file(o.algebra_path);
    rep.inputs["algebra:" + o.algebra_path] = fnv1a_hex(text);
    json j = parse_json(text);

    // lenient load: report violations instead of aborting
    int dim = j.at("dim").get<int>();
    auto alg = std::make_shared<LieAlgebra>(dim, j.at("labels").get<std::vector<std::string>>());
    for (const auto& entry : j.at("brackets")) {
        BracketTerms terms;
        for (const auto& t : entry.at("terms"))
            terms.emplace_back(t.at("k").get<int>(), Rational::parse(t.at("c").get<std::string>()));
        alg->set_bracket(entry.at("i").get<int>(), entry.at("j").get<int>(), terms);
    }
    Decomposition dec{alg, j.at("base").get<std::vector<int>>(), j.at("complement").get<std::vector<int>>()};

    auto vr = alg->validate();
    rep.add_check("antisymmetry", vr.antisymmetry.empty(), "exact",
                  vr.antisymmetry.empty() ? "" : std::to_string(vr.antisymmetry.size()) + " violation(s)");
    rep.add_check("jacobi", vr.jacobi.empty(), "exact",
                  vr.jacobi.empty() ? "" : std::to_string(vr.jacobi.size()) + " violation(s)");
    json viol = json::array();
    for (const auto& v : vr.jacobi)
        viol.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"p", v.p}, {"defect", v.defect.str()}});
    auto rr = dec.check_reductive();
    rep.add_check("reductive", rr.ok(), "exact",
                  rr.ok() ? "" : std::to_string(rr.violations.size()) + " violation(s)");
    rep.result["jacobi_violations"] = viol;
    return finish(o, rep, t0);
}

int cmd_construct_r(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "construct-r";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    DynamicalR r = construct_r(b.dec);
    rep.result = rmatrix_to_json(r, o.algebra_path);
    rep.result["det"] = r.det->str();
    rep.add_check("fat-somewhere", !r.det->is_zero(), "exact", "det a(lambda) not identically zero");
    if (!o.rout_path.empty()) write_file(o.rout_path, rmatrix_to_json(r, o.algebra_path).dump(2) + "\n");
    return finish(o, rep, t0);
}

int cmd_check_cdybe(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "check-cdybe";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    DynamicalR r = load_rmatrix(o, b, rep);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    add_multivector_checks(rep, "cdybe", cdybe_residual(r), z);
    return finish(o, rep, t0);
}

int cmd_check_equivariance(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "check-equivariance";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    DynamicalR r = load_rmatrix(o, b, rep);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    BaseStructure bs = base_structure(b.dec);
    for (int i = 0; i < b.dec.base_dim(); ++i)
        add_multivector_checks(rep, "equivariance[" + b.alg->label(b.dec.base[i]) + "]",
                               equivariance_residual(r, bs, i), z);
    return finish(o, rep, t0);
}

int cmd_fatness(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "fatness";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    std::vector<Rational> pt = parse_point(o.point_text, b.dec.base_dim());
    FatnessResult f = fatness(b.dec, pt);
    rep.result["det_symbolic"] = f.det_symbolic.str();
    rep.result["det_value"] = f.det_value.str();
    std::string note = f.fat ? "fat at the given point" : "not fat at the given point";
    rep.add_check("fat-at-point", f.fat, "exact", note + ", det = " + f.det_value.str());
    return finish(o, rep, t0);
}

int cmd_star(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "star";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    if (o.exprs.size() != 2) throw Error("star needs exactly two expression arguments");
    auto ctx = make_qcontext(b.dec, o.order);
    int l = b.dec.base_dim();
    ScalarExpr f = parse_expr(o.exprs[0], l);
    ScalarExpr g = parse_expr(o.exprs[1], l);
    HSeries<ScalarExpr> s = star_expr(*ctx->pbw, f, g);
    json orders = json::array();
    for (int k = 0; k <= o.order; ++k) orders.push_back(s[k].str());
    rep.result["orders"] = orders;
    return finish(o, rep, t0);
}

int cmd_check_cocycle(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "check-cocycle";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    auto ctx = make_qcontext(b.dec, o.order);
    DynTensor f = load_twist(o, ctx, rep);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    int threads = thread_count();
    add_tensor_checks(rep, "cocycle", cocycle_residual(f), z, threads);
    auto [c1, c2] = counit_check(f);
    add_tensor_checks(rep, "counit-left", c1, z, threads);
    add_tensor_checks(rep, "counit-right", c2, z, threads);
    return finish(o, rep, t0);
}

int cmd_check_qdybe(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "check-qdybe";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    auto ctx = make_qcontext(b.dec, o.order);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    int threads = thread_count();
    if (!o.twist_path.empty()) {
        DynTensor f = load_twist(o, ctx, rep);
        add_tensor_checks(rep, "qdybe", qdybe_residual(r_from_twist(f)), z, threads);
    } else {
        // classical-limit ladder: R = 1 + hbar r for a classical r-matrix
        DynamicalR r = load_rmatrix(o, b, rep);
        DynTensor rt = DynTensor::unit(ctx, 2) + r_as_tensor(ctx, r).hbar_shifted(1);
        DynTensor res = qdybe_residual(rt);
        for (int k = 0; k <= std::min(1, ctx->trunc); ++k) {
            bool empty = res.order(k).empty();
            if (empty) {
                rep.add_check("qdybe[h^" + std::to_string(k) + "]", true, "exact", "no terms");
            } else {
                for (const auto& [legs, c] : res.order(k))
                    rep.add_check("qdybe[h^" + std::to_string(k) + "]", test_zero(c, z));
            }
        }
        if (ctx->trunc >= 2) {
            Multivector anti = alt3(res, 2, z);
            add_multivector_checks(rep, "qdybe[h^2 antisymmetrized]", anti, z);
        }
    }
    return finish(o, rep, t0);
}

int cmd_derive_r(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "derive-R";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    auto ctx = make_qcontext(b.dec, o.order);
    DynTensor f = load_twist(o, ctx, rep);
    DynTensor r = r_from_twist(f);
    rep.result["R"] = twist_to_json(r);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    int threads = thread_count();
    auto [c1, c2] = counit_check(f);
    add_tensor_checks(rep, "counit-left", c1, z, threads);
    add_tensor_checks(rep, "counit-right", c2, z, threads);
    if (!o.rout_path.empty()) write_file(o.rout_path, twist_to_json(r).dump(2) + "\n");
    return finish(o, rep, t0);
}

int cmd_check_lemma(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "check-lemma";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    auto ctx = make_qcontext(b.dec, o.order);
    DynTensor f = load_twist(o, ctx, rep);
    ZeroOptions z = zero_opts(o, b.dec.base_dim());
    int threads = thread_count();
    LemmaReport lr = lemma_check(f);
    add_tensor_checks(rep, "twisted-coproduct-left", lr.res_delta_left, z, threads);
    add_tensor_checks(rep, "twisted-coproduct-right", lr.res_delta_right, z, threads);
    add_tensor_checks(rep, "phi-conjugation", lr.res_conjugation, z, threads);
    return finish(o, rep, t0);
}

int cmd_solve_twist(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "solve-twist";
    rep.seed = o.seed;
    rep.order = o.order;
    rep.zero_test_mode = o.zero_test;
    BuiltinAlgebra b = load_algebra(o, rep);
    auto ctx = make_qcontext(b.dec, o.order);
    int l = b.dec.base_dim();

    DynTensor f_partial = DynTensor::unit(ctx, 2);
    if (!o.twist_path.empty()) f_partial = load_twist(o, ctx, rep);

    std::vector<AnsatzTerm> ansatz;
    if (!o.ansatz_path.empty()) {
        std::string text = read_file(o.ansatz_path);
        rep.inputs["ansatz:" + o.ansatz_path] = fnv1a_hex(text);
        json j = parse_json(text);
        for (const auto& t : j.at("terms")) {
            AnsatzTerm a;
            a.coeff = parse_expr(t.at("coeff").get<std::string>(), l);
            const auto& legs = t.at("legs");
            if (legs.size() != 2) throw Error("ansatz terms need exactly two legs");
            for (int s = 0; s < 2; ++s) {
                Word w;
                for (const auto& lab : legs[s]) {
                    int idx = b.alg->index_of(lab.get<std::string>());
                    if (idx < 0) throw UnknownName(lab.get<std::string>());
                    w.push_back(idx);
                }
                (s == 0 ? a.leg1 : a.leg2) = std::move(w);
            }
            ansatz.push_back(std::move(a));
        }
    } else {
        // default ansatz from the classical r-matrix terms: both leg orders
        DynamicalR r = load_rmatrix(o, b, rep);
        for (const auto& [t, c] : r.r.terms()) {
            ansatz.push_back({c, Word{t[0]}, Word{t[1]}});
            ansatz.push_back({c, Word{t[1]}, Word{t[0]}});
        }
    }
    if (ansatz.empty()) throw Error("empty ansatz");

    TwistSolution sol = solve_twist_order(f_partial, ansatz, o.korder);
    rep.add_check("solvable", sol.feasible, "exact", sol.feasible ? "" : sol.note);
    if (sol.feasible) {
        json part = json::array();
        for (const auto& x : sol.particular) part.push_back(x.str());
        json kern = json::array();
        for (const auto& v : sol.kernel) {
            json row = json::array();
            for (const auto& x : v) row.push_back(x.str());
            kern.push_back(row);
        }
        rep.result["particular"] = part;
        rep.result["kernel"] = kern;
        DynTensor f_sol = apply_ansatz(f_partial, ansatz, sol.particular, o.korder);
        rep.result["twist"] = twist_to_json(f_sol);
    }
    return finish(o, rep, t0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checker for dynamical r-matrices and their order-by-order quantizations"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&](CLI::App* sub, bool with_exprs = false) {
        sub->add_option("--algebra", o.algebra_path, "algebra file (JSON)");
        sub->add_option("--rmatrix", o.rmatrix_spec, "r-matrix file, or 'constructed'");
        sub->add_option("--twist", o.twist_path, "twist/R tensor file (JSON)");
        sub->add_option("--ansatz", o.ansatz_path, "solver ansatz file (JSON)");
        sub->add_option("--order", o.order, "hbar truncation order")->default_val(4);
        sub->add_option("--zero-test", o.zero_test, "zero-test strategy: auto|exact|sampled")
            ->default_val("auto")
            ->check(CLI::IsMember({"auto", "exact", "sampled"}));
        sub->add_option("--seed", o.seed, "seed for sampled zero-testing")->default_val(0);
        sub->add_option("--point", o.point_text, "evaluation point 'a/b,c/d,...'");
        sub->add_option("--out", o.out_path, "report file (default: stdout)");
        sub->add_option("--rout", o.rout_path, "output file for a derived r-matrix / R tensor");
        sub->add_option("--korder", o.korder, "hbar order solved by solve-twist")->default_val(1);
        sub->add_flag("--timing", o.timing, "include wall-clock timing in the report");
        if (with_exprs) sub->add_option("exprs", o.exprs, "expressions");
    };

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const CommonOpts&);
        bool exprs;
    };
    Cmd cmds[] = {
        {"validate", "check structure constants and the decomposition", cmd_validate, false},
        {"construct-r", "build r from the fat reductive decomposition", cmd_construct_r, false},
        {"check-cdybe", "classical dynamical Yang-Baxter residual", cmd_check_cdybe, false},
        {"check-equivariance", "infinitesimal H-equivariance residuals", cmd_check_equivariance, false},
        {"fatness", "evaluate det a(lambda) at a point", cmd_fatness, false},
        {"star", "PBW-star product of two expressions", cmd_star, true},
        {"check-cocycle", "twisted-cocycle and counit conditions of a twist", cmd_check_cocycle, false},
        {"check-qdybe", "quantum dynamical Yang-Baxter residual", cmd_check_qdybe, false},
        {"derive-R", "R = F21^-1 * F12 from a twist", cmd_derive_r, false},
        {"check-lemma", "twisted-coproduct and phi-conjugation identities", cmd_check_lemma, false},
        {"solve-twist", "solve one hbar order of the cocycle condition", cmd_solve_twist, false},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, c.exprs);
        sub->callback([&o, &c]() {
            int rc = c.fn(o);
            if (rc != 0) std::exit(rc);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
