#include "dynrmat/star_product.hpp"

#include <algorithm>

#include "dynrmat/errors.hpp"
#include "dynrmat/prng.hpp"

namespace dynrmat {

std::vector<Exponents> exponents_of_degree(int nvars, int d) {
    std::vector<Exponents> out;
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Exponents cur(nvars, 0);
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur[var] = static_cast<unsigned>(rem);
            out.push_back(cur);
            return;
        }
        for (int take = rem; take >= 0; --take) {
            cur[var] = static_cast<unsigned>(take);
            self(self, var + 1, rem - take);
        }
    };
    rec(rec, 0, d);
    return out;
}

namespace {

Rational exponents_factorial(const Exponents& e) {
    Rational f(1);
    for (unsigned x : e) f *= factorial(x);
    return f;
}

// d^alpha applied to an expression, filling the cache along the exponent chain
const ScalarExpr& cached_derivative(std::map<Exponents, ScalarExpr>& cache, const ScalarExpr& base,
                                    const Exponents& alpha) {
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    if (total_degree(alpha) == 0) return cache.emplace(alpha, base).first->second;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0) continue;
        Exponents prev = alpha;
        prev[i] -= 1;
        const ScalarExpr& tail = cached_derivative(cache, base, prev);
        return cache.emplace(alpha, tail.diff(static_cast<int>(i))).first->second;
    }
    return cache.emplace(alpha, base).first->second; // unreachable
}

// d^alpha applied to the monomial l^mu: factor * l^{mu-alpha}, or false if it dies
bool monomial_derivative(const Exponents& mu, const Exponents& alpha, Exponents& out, Rational& factor) {
    factor = Rational(1);
    out = mu;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (alpha[i] > mu[i]) return false;
        for (unsigned t = 0; t < alpha[i]; ++t) factor *= Rational(static_cast<long>(mu[i] - t));
        out[i] = mu[i] - alpha[i];
    }
    return true;
}

Poly apply_btable(const BTable& table, const Poly& f, const Poly& g) {
    int l = f.nvars();
    Poly out(l);
    for (const auto& entry : table) {
        Poly df = f;
        for (int i = 0; i < l; ++i)
            for (unsigned t = 0; t < entry.alpha[i] && !df.is_zero(); ++t) df = df.diff(i);
        if (df.is_zero()) continue;
        Poly dg = g;
        for (int i = 0; i < l; ++i)
            for (unsigned t = 0; t < entry.beta[i] && !dg.is_zero(); ++t) dg = dg.diff(i);
        if (dg.is_zero()) continue;
        out += entry.coeff * df * dg;
    }
    return out;
}

} // namespace

PBWContext::PBWContext(LieAlgebraPtr h, int trunc) : h_(std::move(h)), trunc_(trunc) {
    if (trunc < 0) throw Error("negative truncation order");
    abelian_ = h_->raw_entries().empty();
}

UEElement PBWContext::sigma_monomial(const Exponents& alpha) const {
    if (static_cast<int>(alpha.size()) != dim()) throw Error("exponent length mismatch");
    {
        std::lock_guard lk(mu_);
        auto it = sigma_cache_.find(alpha);
        if (it != sigma_cache_.end()) return it->second;
    }
    unsigned d = total_degree(alpha);
    UEElement result(h_, trunc_);
    if (d == 0) {
        result = UEElement::unit(h_, trunc_);
    } else {
        // sigma(l^a) = (1/d) sum_i a_i sigma(l^{a - e_i}) h_i
        for (int i = 0; i < dim(); ++i) {
            if (alpha[i] == 0) continue;
            Exponents prev = alpha;
            prev[i] -= 1;
            UEElement tail = sigma_monomial(prev);
            UEElement gen(h_, trunc_);
            gen.add_term(Word{i}, HSeries<Rational>::unit(trunc_, Rational(0), Rational(1)));
            result += (tail * gen).scaled(Rational(static_cast<long>(alpha[i]), static_cast<long>(d)));
        }
    }
    std::lock_guard lk(mu_);
    return sigma_cache_.emplace(alpha, std::move(result)).first->second;
}

WordSum<Rational> PBWContext::sym_monomial_plain(const Exponents& alpha) const {
    if (static_cast<int>(alpha.size()) != dim()) throw Error("exponent length mismatch");
    {
        std::lock_guard lk(mu_);
        auto it = sym_cache_.find(alpha);
        if (it != sym_cache_.end()) return it->second;
    }
    unsigned d = total_degree(alpha);
    WordSum<Rational> result;
    if (d == 0) {
        result.emplace(Word{}, Rational(1));
    } else {
        for (int i = 0; i < dim(); ++i) {
            if (alpha[i] == 0) continue;
            Exponents prev = alpha;
            prev[i] -= 1;
            Rational w(static_cast<long>(alpha[i]), static_cast<long>(d));
            for (const auto& [tail, c] : sym_monomial_plain(prev)) {
                Word word = tail;
                word.push_back(i);
                for (const auto& [nw, k] : normal_order(*h_, word)) {
                    auto it = result.find(nw);
                    if (it == result.end()) result.emplace(nw, c * k * w);
                    else {
                        it->second += c * k * w;
                        if (it->second.is_zero()) result.erase(it);
                    }
                }
            }
        }
    }
    std::lock_guard lk(mu_);
    return sym_cache_.emplace(alpha, std::move(result)).first->second;
}

UEElement sigma(const PBWContext& ctx, const Poly& f) {
    if (f.nvars() != ctx.dim()) throw Error("polynomial variable count does not match base dimension");
    UEElement out(ctx.algebra(), ctx.trunc());
    for (const auto& [e, c] : f.terms()) out += ctx.sigma_monomial(e).scaled(c);
    return out;
}

HSeries<Poly> sigma_inv(const PBWContext& ctx, const UEElement& u) {
    int l = ctx.dim();
    for (const auto& [w, c] : u.terms())
        for (int idx : w)
            if (idx >= l) throw NotInBaseSubalgebra(word_str(*u.algebra(), w));
    HSeries<Poly> out(ctx.trunc(), Poly(l));
    UEElement work = u;
    while (!work.is_zero()) {
        int d = work.degree();
        std::vector<std::pair<Word, HSeries<Rational>>> top;
        for (const auto& [w, c] : work.terms())
            if (static_cast<int>(w.size()) == d) top.emplace_back(w, c);
        for (const auto& [w, c] : top) {
            Exponents alpha(l, 0);
            for (int idx : w) alpha[idx] += 1;
            for (int k = 0; k <= ctx.trunc(); ++k)
                if (!c[k].is_zero()) out[k] += Poly::monomial(l, alpha, c[k]);
            work -= ctx.sigma_monomial(alpha).scaled_series(c);
        }
    }
    return out;
}

HSeries<Poly> star(const PBWContext& ctx, const Poly& f, const Poly& g) {
    if (ctx.base_abelian()) {
        HSeries<Poly> out(ctx.trunc(), Poly(ctx.dim()));
        out[0] = f * g;
        return out;
    }
    return sigma_inv(ctx, sigma(ctx, f) * sigma(ctx, g));
}

HSeries<Poly> star_series(const PBWContext& ctx, const HSeries<Poly>& f, const HSeries<Poly>& g) {
    HSeries<Poly> out(ctx.trunc(), Poly(ctx.dim()));
    for (int i = 0; i <= ctx.trunc(); ++i) {
        if (f[i].is_zero()) continue;
        for (int j = 0; i + j <= ctx.trunc(); ++j) {
            if (g[j].is_zero()) continue;
            HSeries<Poly> part = star(ctx, f[i], g[j]);
            for (int k = 0; i + j + k <= ctx.trunc(); ++k) out[i + j + k] += part[k];
        }
    }
    return out;
}

Poly lie_poisson(const LieAlgebra& h, const Poly& f, const Poly& g) {
    int l = h.dim();
    Poly out(l);
    for (int i = 0; i < l; ++i) {
        Poly fi = f.diff(i);
        if (fi.is_zero()) continue;
        for (int j = 0; j < l; ++j) {
            Poly gj = g.diff(j);
            if (gj.is_zero()) continue;
            for (const auto& [k, c] : h.bracket_basis(i, j)) out += fi * gj * Poly::variable(l, k) * c;
        }
    }
    return out;
}

const std::vector<BTable>& PBWContext::b_tables(int solve_degree) const {
    if (solve_degree < 0) solve_degree = 2 * trunc_ + 2;
    {
        std::lock_guard lk(mu_);
        auto it = btables_.find(solve_degree);
        if (it != btables_.end()) return it->second;
    }
    int l = dim();
    int N = trunc_;
    std::vector<BTable> tables(static_cast<std::size_t>(N) + 1); // index 0 is plain multiplication
    if (!abelian_) {
        std::vector<std::vector<Exponents>> monos(static_cast<std::size_t>(solve_degree) + 2);
        for (int d = 0; d <= solve_degree + 1; ++d) monos[d] = exponents_of_degree(l, d);

        std::map<std::pair<Exponents, Exponents>, HSeries<Poly>> pair_star;
        auto star_pair = [&](const Exponents& mu, const Exponents& nu) -> const HSeries<Poly>& {
            auto key = std::make_pair(mu, nu);
            auto it = pair_star.find(key);
            if (it != pair_star.end()) return it->second;
            HSeries<Poly> s =
                star(*this, Poly::monomial(l, mu, Rational(1)), Poly::monomial(l, nu, Rational(1)));
            return pair_star.emplace(std::move(key), std::move(s)).first->second;
        };

        // Triangular determination: pairs (alpha, beta) with |alpha|,|beta| <= k
        // in increasing total degree; the top derivative term isolates
        // coeff_{alpha beta} with constant factor alpha! beta!.
        for (int k = 1; k <= N; ++k) {
            for (int t = 0; t <= 2 * k; ++t) {
                for (int da = std::max(0, t - k); da <= std::min(k, t); ++da) {
                    int db = t - da;
                    for (const Exponents& alpha : monos[da]) {
                        for (const Exponents& beta : monos[db]) {
                            Poly rhs = star_pair(alpha, beta)[k];
                            for (const auto& entry : tables[k]) {
                                Exponents ra, rb;
                                Rational fa, fb;
                                if (!monomial_derivative(alpha, entry.alpha, ra, fa)) continue;
                                if (!monomial_derivative(beta, entry.beta, rb, fb)) continue;
                                rhs -= entry.coeff * Poly::monomial(l, ra, fa * fb) * Poly::monomial(l, rb, Rational(1));
                            }
                            if (rhs.is_zero()) continue;
                            Rational denom = exponents_factorial(alpha) * exponents_factorial(beta);
                            tables[k].push_back({alpha, beta, rhs * denom.inv()});
                        }
                    }
                }
            }
        }

        // full consistency pass over the solve set
        for (int t = 0; t <= solve_degree; ++t) {
            for (int da = 0; da <= t; ++da) {
                int db = t - da;
                for (const Exponents& mu : monos[da]) {
                    for (const Exponents& nu : monos[db]) {
                        const HSeries<Poly>& s = star_pair(mu, nu);
                        Poly fm = Poly::monomial(l, mu, Rational(1));
                        Poly gm = Poly::monomial(l, nu, Rational(1));
                        for (int k = 1; k <= N; ++k)
                            if (!(apply_btable(tables[k], fm, gm) == s[k]))
                                throw InterpolationInconsistent("degree-" + std::to_string(t) +
                                                                " pair at hbar^" + std::to_string(k));
                    }
                }
            }
        }

        // probes one degree past the solve set
        SplitMix64 rng(0x9b1ddf5cULL);
        for (int probe = 0; probe < 50; ++probe) {
            int da = static_cast<int>(rng.below(static_cast<std::uint64_t>(solve_degree + 2)));
            int db = solve_degree + 1 - da;
            const auto& mus = monos[da];
            const auto& nus = monos[db];
            const Exponents& mu = mus[rng.below(mus.size())];
            const Exponents& nu = nus[rng.below(nus.size())];
            HSeries<Poly> s =
                star(*this, Poly::monomial(l, mu, Rational(1)), Poly::monomial(l, nu, Rational(1)));
            Poly fm = Poly::monomial(l, mu, Rational(1));
            Poly gm = Poly::monomial(l, nu, Rational(1));
            for (int k = 1; k <= N; ++k)
                if (!(apply_btable(tables[k], fm, gm) == s[k]))
                    throw InterpolationInconsistent("probe pair of degree " +
                                                    std::to_string(solve_degree + 1));
        }
    }
    std::lock_guard lk(mu_);
    return btables_.emplace(solve_degree, std::move(tables)).first->second;
}

HSeries<ScalarExpr> star_expr(const PBWContext& ctx, const ScalarExpr& f, const ScalarExpr& g) {
    HSeries<ScalarExpr> out(ctx.trunc(), ScalarExpr(0));
    out[0] = f * g;
    if (ctx.base_abelian()) return out;
    // every B_k differentiates both arguments (1 * g = g exactly), so a
    // constant factor never reaches the tables
    if (f.is_const() || g.is_const()) return out;
    const auto& tables = ctx.b_tables();
    std::map<Exponents, ScalarExpr> df_cache, dg_cache;
    for (int k = 1; k <= ctx.trunc(); ++k) {
        ScalarExpr acc(0);
        for (const auto& entry : tables[k]) {
            const ScalarExpr& df = cached_derivative(df_cache, f, entry.alpha);
            if (df.is_const_zero()) continue;
            const ScalarExpr& dg = cached_derivative(dg_cache, g, entry.beta);
            if (dg.is_const_zero()) continue;
            acc += poly_to_expr(entry.coeff) * df * dg;
        }
        out[k] = acc;
    }
    return out;
}

ShiftImage shift_expr(const PBWContext& ctx, const ScalarExpr& f) {
    int l = ctx.dim();
    ShiftImage out;
    out.trunc = ctx.trunc();
    out.orders.resize(static_cast<std::size_t>(ctx.trunc()) + 1);
    std::map<Exponents, ScalarExpr> cache;
    for (int k = 0; k <= ctx.trunc(); ++k) {
        for (const Exponents& alpha : exponents_of_degree(l, k)) {
            const ScalarExpr& df = cached_derivative(cache, f, alpha);
            if (df.is_const_zero()) continue;
            ScalarExpr weight = df * ScalarExpr::constant(exponents_factorial(alpha).inv());
            for (const auto& [w, c] : ctx.sym_monomial_plain(alpha)) {
                ScalarExpr add = weight * ScalarExpr::constant(c);
                auto it = out.orders[k].find(w);
                if (it == out.orders[k].end()) out.orders[k].emplace(w, add);
                else it->second += add;
            }
        }
    }
    return out;
}

ShiftSeries shift_poly(const PBWContext& ctx, const Poly& f) {
    int l = ctx.dim();
    ShiftSeries out;
    for (int k = 0; k <= ctx.trunc(); ++k) {
        for (const Exponents& alpha : exponents_of_degree(l, k)) {
            Poly df = f;
            for (int i = 0; i < l && !df.is_zero(); ++i)
                for (unsigned t = 0; t < alpha[i] && !df.is_zero(); ++t) df = df.diff(i);
            if (df.is_zero()) continue;
            Poly weighted = df * exponents_factorial(alpha).inv();
            for (const auto& [w, c] : ctx.sym_monomial_plain(alpha)) {
                auto it = out.terms.find(w);
                if (it == out.terms.end())
                    it = out.terms.emplace(w, HSeries<Poly>(ctx.trunc(), Poly(l))).first;
                it->second[k] += weighted * c;
            }
        }
    }
    return out;
}

ShiftSeries mul(const PBWContext& ctx, const ShiftSeries& a, const ShiftSeries& b) {
    ShiftSeries out;
    for (const auto& [wa, sa] : a.terms) {
        for (const auto& [wb, sb] : b.terms) {
            HSeries<Poly> scalar = star_series(ctx, sa, sb);
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            for (const auto& [word, c] : normal_order(*ctx.algebra(), w)) {
                auto it = out.terms.find(word);
                if (it == out.terms.end())
                    it = out.terms.emplace(word, HSeries<Poly>(ctx.trunc(), Poly(ctx.dim()))).first;
                it->second += scalar.scaled(c);
            }
        }
    }
    return out;
}

bool equal(const ShiftSeries& a, const ShiftSeries& b) {
    auto normal = [](const ShiftSeries& s) {
        WordSum<HSeries<Poly>> t;
        for (const auto& [w, series] : s.terms) {
            bool zero = true;
            for (int k = 0; k <= series.truncation(); ++k)
                if (!series[k].is_zero()) { zero = false; break; }
            if (!zero) t.emplace(w, series);
        }
        return t;
    };
    return normal(a) == normal(b);
}

} // namespace dynrmat
