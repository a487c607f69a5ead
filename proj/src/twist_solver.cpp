#include "dynrmat/twist_solver.hpp"

#include <algorithm>
#include <map>

#include "dynrmat/errors.hpp"

namespace dynrmat {

DynTensor apply_ansatz(const DynTensor& f_partial, const std::vector<AnsatzTerm>& ansatz,
                       const std::vector<Rational>& t, int k) {
    if (t.size() != ansatz.size()) throw Error("coefficient count does not match ansatz");
    DynTensor out = f_partial;
    for (std::size_t a = 0; a < ansatz.size(); ++a) {
        if (t[a].is_zero()) continue;
        out.add_term(k, {ansatz[a].leg1, ansatz[a].leg2}, ansatz[a].coeff * ScalarExpr::constant(t[a]));
    }
    return out;
}

namespace {

// the three order-k residual maps whose vanishing we solve for
std::vector<std::map<LegTuple, ScalarExpr>> residual_maps(const DynTensor& f, int k) {
    std::vector<std::map<LegTuple, ScalarExpr>> out;
    out.push_back(cocycle_residual(f).order(k));
    auto [c1, c2] = counit_check(f);
    out.push_back(c1.order(k));
    out.push_back(c2.order(k));
    return out;
}

struct LinearSystem {
    // rows: coefficients over the unknowns plus the constant column
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
};

// Gauss-Jordan over Q; returns false when inconsistent.
bool solve(LinearSystem sys, std::size_t nunk, std::vector<Rational>& particular,
           std::vector<std::vector<Rational>>& kernel, std::string& note) {
    std::size_t rows = sys.a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nunk && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sys.a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(sys.a[p], sys.a[r]);
        std::swap(sys.b[p], sys.b[r]);
        Rational inv = sys.a[r][c].inv();
        for (std::size_t cc = 0; cc < nunk; ++cc) sys.a[r][cc] *= inv;
        sys.b[r] *= inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || sys.a[rr][c].is_zero()) continue;
            Rational f = sys.a[rr][c];
            for (std::size_t cc = 0; cc < nunk; ++cc) sys.a[rr][cc] -= f * sys.a[r][cc];
            sys.b[rr] -= f * sys.b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr) {
        if (!sys.b[rr].is_zero()) {
            note = "inconsistent equation: 0 = " + sys.b[rr].str();
            return false;
        }
    }
    particular.assign(nunk, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) particular[pivot_col[i]] = sys.b[i];
    std::vector<bool> is_pivot(nunk, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < nunk; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(nunk, Rational(0));
        v[c] = Rational(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -sys.a[i][c];
        kernel.push_back(std::move(v));
    }
    return true;
}

} // namespace

TwistSolution solve_twist_order(const DynTensor& f_partial, const std::vector<AnsatzTerm>& ansatz,
                                int k, std::size_t term_budget) {
    std::size_t s = ansatz.size();
    int nvars = f_partial.context()->dec.base_dim();

    std::vector<Rational> zero(s, Rational(0));
    auto base_maps = residual_maps(apply_ansatz(f_partial, ansatz, zero, k), k);

    // columns: residual(e_a) - residual(0), one per unknown
    std::vector<std::vector<std::map<LegTuple, ScalarExpr>>> cols(s);
    for (std::size_t a = 0; a < s; ++a) {
        std::vector<Rational> unit = zero;
        unit[a] = Rational(1);
        auto maps = residual_maps(apply_ansatz(f_partial, ansatz, unit, k), k);
        cols[a].resize(maps.size());
        for (std::size_t m = 0; m < maps.size(); ++m) {
            for (const auto& [legs, c] : maps[m]) cols[a][m][legs] = c;
            for (const auto& [legs, c] : base_maps[m]) {
                auto it = cols[a][m].find(legs);
                if (it == cols[a][m].end()) cols[a][m][legs] = -c;
                else it->second -= c;
            }
        }
    }

    // For each residual map and leg tuple, clear denominators across the
    // affine combination and emit one linear equation per lambda-monomial.
    LinearSystem sys;
    for (std::size_t m = 0; m < base_maps.size(); ++m) {
        std::map<LegTuple, bool> keys;
        for (const auto& [legs, c] : base_maps[m]) keys[legs] = true;
        for (std::size_t a = 0; a < s; ++a)
            for (const auto& [legs, c] : cols[a][m]) keys[legs] = true;
        for (const auto& [legs, unused] : keys) {
            ScalarExpr b0(0);
            auto itb = base_maps[m].find(legs);
            if (itb != base_maps[m].end()) b0 = itb->second;
            RationalForm fb = b0.rational_form(nvars, term_budget);
            std::vector<RationalForm> fc;
            fc.reserve(s);
            for (std::size_t a = 0; a < s; ++a) {
                ScalarExpr ca(0);
                auto it = cols[a][m].find(legs);
                if (it != cols[a][m].end()) ca = it->second;
                fc.push_back(ca.rational_form(nvars, term_budget));
            }
            // common denominator product
            Poly p0 = fb.num;
            for (std::size_t a = 0; a < s; ++a) p0 *= fc[a].den;
            std::vector<Poly> pa(s, Poly(nvars));
            for (std::size_t a = 0; a < s; ++a) {
                Poly t = fc[a].num * fb.den;
                for (std::size_t a2 = 0; a2 < s; ++a2)
                    if (a2 != a) t *= fc[a2].den;
                pa[a] = std::move(t);
            }
            std::map<Exponents, std::size_t> monomials;
            auto note_monos = [&](const Poly& p) {
                for (const auto& [e, c] : p.terms())
                    if (!monomials.count(e)) monomials.emplace(e, monomials.size());
            };
            note_monos(p0);
            for (const auto& p : pa) note_monos(p);
            for (const auto& [e, row] : monomials) {
                std::vector<Rational> arow(s, Rational(0));
                for (std::size_t a = 0; a < s; ++a) arow[a] = pa[a].coefficient(e);
                sys.a.push_back(std::move(arow));
                sys.b.push_back(-p0.coefficient(e));
            }
        }
    }

    TwistSolution sol;
    if (!solve(std::move(sys), s, sol.particular, sol.kernel, sol.note)) {
        sol.feasible = false;
        return sol;
    }
    sol.feasible = true;

    // proof-grade verification of the particular solution
    DynTensor f_sol = apply_ansatz(f_partial, ansatz, sol.particular, k);
    ZeroOptions opts;
    opts.nvars = nvars;
    DynTensor res = cocycle_residual(f_sol);
    auto [c1, c2] = counit_check(f_sol);
    for (int ord = 0; ord <= k; ++ord) {
        for (const auto& [legs, c] : res.order(ord))
            if (!test_zero(c, opts).zero) throw Error("solver verification failed (cocycle)");
        for (const auto& [legs, c] : c1.order(ord))
            if (!test_zero(c, opts).zero) throw Error("solver verification failed (counit)");
        for (const auto& [legs, c] : c2.order(ord))
            if (!test_zero(c, opts).zero) throw Error("solver verification failed (counit)");
    }
    return sol;
}

} // namespace dynrmat
