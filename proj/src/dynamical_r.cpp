#include "dynrmat/dynamical_r.hpp"

#include <map>

#include "dynrmat/errors.hpp"

namespace dynrmat {

namespace {

// <lambda, v_h>: contract the h-component of a bracket value with lambda,
// where lambda coordinates are dual to the base basis (local order).
Poly pair_with_lambda(const Decomposition& dec, const BracketTerms& value) {
    int l = dec.base_dim();
    Poly out(l);
    for (const auto& [k, c] : value) {
        for (int a = 0; a < l; ++a) {
            if (dec.base[a] == k) {
                out += Poly::variable(l, a) * c;
                break;
            }
        }
    }
    return out;
}

// determinant of the submatrix with rows/cols selected by bitmasks, memoized
class MinorTable {
public:
    MinorTable(const std::vector<std::vector<Poly>>& m, int nvars)
        : m_(m), n_(static_cast<int>(m.size())), nvars_(nvars) {}

    const Poly& det(unsigned rows, unsigned cols) {
        auto it = cache_.find({rows, cols});
        if (it != cache_.end()) return it->second;
        Poly result(nvars_);
        int count = __builtin_popcount(rows);
        if (count == 0) {
            result = Poly::constant(result.nvars(), Rational(1));
        } else {
            int r = __builtin_ctz(rows); // expand along the lowest selected row
            unsigned rrest = rows & ~(1u << r);
            int pos = 0;
            for (int c = 0; c < n_; ++c) {
                if (!(cols & (1u << c))) continue;
                if (!m_[r][c].is_zero()) {
                    Poly sub = det(rrest, cols & ~(1u << c));
                    Poly term = m_[r][c] * sub;
                    if (pos % 2 == 0) result += term; else result -= term;
                }
                ++pos;
            }
        }
        return cache_.emplace(std::make_pair(rows, cols), std::move(result)).first->second;
    }

private:
    const std::vector<std::vector<Poly>>& m_;
    int n_;
    int nvars_;
    std::map<std::pair<unsigned, unsigned>, Poly> cache_;
};

} // namespace

BaseStructure base_structure(const Decomposition& dec) {
    int l = dec.base_dim();
    BaseStructure bs;
    bs.l = l;
    bs.f.assign(l, std::vector<ScalarExpr>(l, ScalarExpr(0)));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            Poly p = pair_with_lambda(dec, dec.alg->bracket_basis(dec.base[i], dec.base[j]));
            bs.f[i][j] = poly_to_expr(p);
        }
    return bs;
}

DynamicalR construct_r(const Decomposition& dec) {
    auto red = dec.check_reductive();
    if (!red.ok()) throw Error("decomposition is not reductive");
    int m = dec.complement_dim();
    if (m > 8) throw Error("symbolic inversion supports |m| <= 8; use point-evaluation mode");
    int l = dec.base_dim();

    std::vector<std::vector<Poly>> a(m, std::vector<Poly>(m, Poly(l)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = pair_with_lambda(dec, dec.alg->bracket_basis(dec.complement[i], dec.complement[j]));

    MinorTable minors(a, l);
    unsigned full = m == 0 ? 0u : ((1u << m) - 1);
    Poly det = minors.det(full, full);
    if (m > 0 && det.is_zero()) throw DegenerateEverywhere();

    // inverse = adjugate / det; adj[i][j] = (-1)^{i+j} minor(j, i)
    std::vector<std::vector<ScalarExpr>> c(m, std::vector<ScalarExpr>(m, ScalarExpr(0)));
    ScalarExpr det_e = poly_to_expr(det);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Poly cof = minors.det(full & ~(1u << j), full & ~(1u << i));
            if (cof.is_zero()) continue;
            if ((i + j) % 2 == 1) cof = -cof;
            c[i][j] = poly_to_expr(cof) / det_e;
        }
    }

    DynamicalR out{dec, Multivector(dec.alg)};
    Rational half(1, 2);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!c[i][j].is_const_zero())
                out.r.add_term({dec.complement[i], dec.complement[j]}, c[i][j] * ScalarExpr::constant(half));
    out.a = std::move(a);
    out.c = std::move(c);
    out.det = std::move(det);
    return out;
}

Multivector cdybe_residual(const DynamicalR& r) {
    const Decomposition& dec = r.dec;
    Multivector acc(dec.alg);
    for (int i = 0; i < dec.base_dim(); ++i) {
        Multivector d = r.r.diff(i);
        if (d.structurally_zero()) continue;
        acc += wedge(Multivector::basis(dec.alg, {dec.base[i]}), d);
    }
    Multivector s = schouten(r.r, r.r);
    acc -= s.scaled(ScalarExpr::constant(Rational(1, 2)));
    return acc;
}

Multivector equivariance_residual(const DynamicalR& r, const BaseStructure& base, int i) {
    const Decomposition& dec = r.dec;
    if (i < 0 || i >= dec.base_dim()) throw Error("base direction out of range");
    Multivector acc = ad_action(dec.base[i], r.r);
    for (int j = 0; j < dec.base_dim(); ++j) {
        if (base(i, j).is_const_zero()) continue;
        acc += r.r.diff(j).scaled(base(i, j));
    }
    return acc;
}

namespace {

// r = -sum over the listed (e, f, coroot-pairing) triples of (1/pairing) e ^ f
DynamicalR closed_form_from_pairs(const Decomposition& dec,
                                  const std::vector<std::pair<int, int>>& pairs) {
    DynamicalR out{dec, Multivector(dec.alg)};
    for (auto [e, f] : pairs) {
        Poly pairing = pair_with_lambda(dec, dec.alg->bracket_basis(e, f));
        if (pairing.is_zero()) throw Error("degenerate root pairing in closed form");
        ScalarExpr coeff = ScalarExpr(-1) / poly_to_expr(pairing);
        out.r.add_term({e, f}, coeff);
    }
    return out;
}

} // namespace

DynamicalR closed_form_simple_cartan(const std::string& alg_name) {
    BuiltinAlgebra b = builtin(alg_name);
    std::vector<std::pair<int, int>> pairs;
    if (alg_name == "sl2") {
        pairs = {{1, 2}}; // (e, f)
    } else if (alg_name == "sl3") {
        pairs = {{2, 5}, {3, 6}, {4, 7}}; // (e1,f1), (e2,f2), (e3,f3)
    } else {
        throw UnknownName(alg_name);
    }
    return closed_form_from_pairs(b.dec, pairs);
}

DynamicalR closed_form_heisenberg(int m, int n) {
    BuiltinAlgebra b = builtin("heisenberg(" + std::to_string(m) + "," + std::to_string(n) + ")");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i) pairs.emplace_back(i, m + n + i); // (p_i, q_i)
    return closed_form_from_pairs(b.dec, pairs);
}

DynamicalR closed_form_sl3_restricted(int root) {
    BuiltinAlgebra b = sl3_reductive_base(root);
    std::vector<std::pair<int, int>> pairs;
    for (int rt = 1; rt <= 3; ++rt) {
        if (rt == root) continue;
        pairs.emplace_back(1 + rt, 4 + rt); // (e_rt, f_rt)
    }
    return closed_form_from_pairs(b.dec, pairs);
}

PointR evaluate_r_at(const Decomposition& dec, const std::vector<Rational>& point) {
    int l = dec.base_dim();
    if (static_cast<int>(point.size()) != l) throw Error("point length does not match base dimension");
    int m = dec.complement_dim();
    PointR out;
    out.a.assign(m, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.a[i][j] =
                pair_with_lambda(dec, dec.alg->bracket_basis(dec.complement[i], dec.complement[j]))
                    .eval(point);
    // invert by Gauss-Jordan on [a | I]
    auto aug = out.a;
    out.c.assign(m, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < m; ++i) out.c[i][i] = Rational(1);
    for (int col = 0; col < m; ++col) {
        int piv = col;
        while (piv < m && aug[piv][col].is_zero()) ++piv;
        if (piv == m) throw Error("pairing matrix is singular at the given point (not fat there)");
        std::swap(aug[piv], aug[col]);
        std::swap(out.c[piv], out.c[col]);
        Rational inv = aug[col][col].inv();
        for (int j = 0; j < m; ++j) {
            aug[col][j] *= inv;
            out.c[col][j] *= inv;
        }
        for (int row = 0; row < m; ++row) {
            if (row == col || aug[row][col].is_zero()) continue;
            Rational f = aug[row][col];
            for (int j = 0; j < m; ++j) {
                aug[row][j] -= f * aug[col][j];
                out.c[row][j] -= f * out.c[col][j];
            }
        }
    }
    return out;
}

FatnessResult fatness(const Decomposition& dec, const std::vector<Rational>& point) {
    int l = dec.base_dim();
    if (static_cast<int>(point.size()) != l) throw Error("point length does not match base dimension");
    int m = dec.complement_dim();
    std::vector<std::vector<Poly>> a(m, std::vector<Poly>(m, Poly(l)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = pair_with_lambda(dec, dec.alg->bracket_basis(dec.complement[i], dec.complement[j]));
    MinorTable minors(a, l);
    unsigned full = m == 0 ? 0u : ((1u << m) - 1);
    Poly det = m == 0 ? Poly::constant(l, Rational(1)) : minors.det(full, full);
    FatnessResult res;
    res.det_symbolic = det;
    res.det_value = det.eval(point);
    res.fat = !res.det_value.is_zero();
    return res;
}

DynamicalR shift_parameter(const DynamicalR& r, const std::vector<Rational>& mu) {
    int l = r.dec.base_dim();
    if (static_cast<int>(mu.size()) != l) throw Error("shift length does not match base dimension");
    std::vector<ScalarExpr> repl;
    repl.reserve(l);
    for (int i = 0; i < l; ++i) repl.push_back(ScalarExpr::variable(i) - ScalarExpr::constant(mu[i]));
    DynamicalR out{r.dec, Multivector(r.dec.alg)};
    for (const auto& [t, c] : r.r.terms()) out.r.add_term(t, c.substitute(repl));
    return out;
}

bool nondegenerate_at(const DynamicalR& r, const std::vector<Rational>& point) {
    if (!r.det)
        throw Error("non-degeneracy is only decided for constructor-built r-matrices "
                    "(no manifold-level criterion for general r)");
    return !r.det->eval(point).is_zero();
}

} // namespace dynrmat
