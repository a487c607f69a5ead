#include "dynrmat/dyn_tensor.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "dynrmat/errors.hpp"

namespace dynrmat {

QContextPtr make_qcontext(const Decomposition& dec, int trunc, int word_budget) {
    auto red = dec.check_reductive();
    if (!red.ok()) throw Error("decomposition is not reductive");
    auto ctx = std::make_shared<QContext>();
    ctx->g = dec.alg;
    ctx->dec = dec;
    ctx->base = std::make_shared<LieAlgebra>(dec.base_algebra());
    ctx->pbw = std::make_shared<PBWContext>(ctx->base, trunc);
    ctx->trunc = trunc;
    ctx->word_budget = word_budget;
    return ctx;
}

DynTensor::DynTensor(QContextPtr ctx, int arity) : ctx_(std::move(ctx)), arity_(arity) {
    if (arity < 1) throw Error("tensor arity must be positive");
    ord_.resize(static_cast<std::size_t>(ctx_->trunc) + 1);
}

DynTensor DynTensor::unit(QContextPtr ctx, int arity) {
    DynTensor t(std::move(ctx), arity);
    t.ord_[0].emplace(LegTuple(arity), ScalarExpr(1));
    return t;
}

void DynTensor::add_term(int order, const LegTuple& legs, const ScalarExpr& c) {
    if (order < 0 || order > trunc()) return;
    if (static_cast<int>(legs.size()) != arity_) throw Error("leg count does not match arity");
    if (c.is_const_zero()) return;
    // normal-order every leg in the ordinary Ug, distributing the sums
    std::vector<std::pair<LegTuple, Rational>> acc;
    acc.emplace_back(LegTuple{}, Rational(1));
    for (const Word& leg : legs) {
        if (static_cast<int>(leg.size()) > ctx_->word_budget)
            throw DegreeBudgetExceeded(static_cast<int>(leg.size()), ctx_->word_budget);
        auto parts = normal_order(*ctx_->g, leg);
        std::vector<std::pair<LegTuple, Rational>> next;
        next.reserve(acc.size() * parts.size());
        for (const auto& [sofar, k] : acc) {
            for (const auto& [w, c2] : parts) {
                LegTuple ext = sofar;
                ext.push_back(w);
                next.emplace_back(std::move(ext), k * c2);
            }
        }
        acc = std::move(next);
    }
    auto& slot = ord_[order];
    for (auto& [key, k] : acc) {
        ScalarExpr add = c * ScalarExpr::constant(k);
        auto it = slot.find(key);
        if (it == slot.end()) slot.emplace(std::move(key), add);
        else {
            it->second += add;
            if (it->second.is_const_zero()) slot.erase(it);
        }
    }
}

DynTensor DynTensor::operator-() const {
    DynTensor out(ctx_, arity_);
    for (int k = 0; k <= trunc(); ++k)
        for (const auto& [legs, c] : ord_[k]) out.ord_[k].emplace(legs, -c);
    return out;
}

DynTensor& DynTensor::operator+=(const DynTensor& o) {
    if (o.arity_ != arity_) throw Error("tensor arity mismatch");
    for (int k = 0; k <= trunc(); ++k) {
        for (const auto& [legs, c] : o.ord_[k]) {
            auto it = ord_[k].find(legs);
            if (it == ord_[k].end()) ord_[k].emplace(legs, c);
            else {
                it->second += c;
                if (it->second.is_const_zero()) ord_[k].erase(it);
            }
        }
    }
    return *this;
}

DynTensor& DynTensor::operator-=(const DynTensor& o) {
    *this += -o;
    return *this;
}

DynTensor DynTensor::scaled(const ScalarExpr& c) const {
    DynTensor out(ctx_, arity_);
    if (c.is_const_zero()) return out;
    for (int k = 0; k <= trunc(); ++k)
        for (const auto& [legs, v] : ord_[k]) out.ord_[k].emplace(legs, v * c);
    return out;
}

DynTensor DynTensor::hbar_shifted(int k) const {
    DynTensor out(ctx_, arity_);
    for (int a = 0; a + k <= trunc(); ++a)
        for (const auto& [legs, c] : ord_[a]) out.ord_[a + k].emplace(legs, c);
    return out;
}

bool DynTensor::is_unital() const {
    const auto& zero = ord_[0];
    if (zero.size() != 1) return false;
    const auto& [legs, c] = *zero.begin();
    for (const Word& w : legs)
        if (!w.empty()) return false;
    return c.is_const_one();
}

int DynTensor::max_word_degree() const {
    int d = 0;
    for (int k = 0; k <= trunc(); ++k)
        for (const auto& [legs, c] : ord_[k])
            for (const Word& w : legs) d = std::max<int>(d, static_cast<int>(w.size()));
    return d;
}

std::string DynTensor::str() const {
    std::ostringstream os;
    bool any = false;
    for (int k = 0; k <= trunc(); ++k) {
        for (const auto& [legs, c] : ord_[k]) {
            if (any) os << " + ";
            any = true;
            os << "h^" << k << "*(" << c.str() << ")*";
            for (std::size_t s = 0; s < legs.size(); ++s) {
                if (s) os << "(x)";
                os << word_str(*ctx_->g, legs[s]);
            }
        }
    }
    return any ? os.str() : "0";
}

DynTensor mul(const DynTensor& a, const DynTensor& b) {
    if (a.context() != b.context()) throw Error("tensors over different contexts");
    if (a.arity() != b.arity()) throw Error("tensor arity mismatch");
    const auto& ctx = a.context();
    int N = ctx->trunc;
    DynTensor out(ctx, a.arity());
    for (int i = 0; i <= N; ++i) {
        for (const auto& [la, ca] : a.order(i)) {
            for (int j = 0; i + j <= N; ++j) {
                for (const auto& [lb, cb] : b.order(j)) {
                    // budget check before ordering the concatenations
                    for (int s = 0; s < a.arity(); ++s) {
                        int len = static_cast<int>(la[s].size() + lb[s].size());
                        if (len > ctx->word_budget) throw DegreeBudgetExceeded(len, ctx->word_budget);
                    }
                    HSeries<ScalarExpr> scalar = star_expr(*ctx->pbw, ca, cb);
                    LegTuple concat(a.arity());
                    for (int s = 0; s < a.arity(); ++s) {
                        concat[s] = la[s];
                        concat[s].insert(concat[s].end(), lb[s].begin(), lb[s].end());
                    }
                    for (int k = 0; i + j + k <= N; ++k) {
                        if (scalar[k].is_const_zero()) continue;
                        out.add_term(i + j + k, concat, scalar[k]);
                    }
                }
            }
        }
    }
    return out;
}

DynTensor invert(const DynTensor& a) {
    if (!a.is_unital()) throw NotUnital();
    const auto& ctx = a.context();
    DynTensor one = DynTensor::unit(ctx, a.arity());
    DynTensor x = one - a; // O(hbar)
    DynTensor acc = one;
    DynTensor pw = one;
    for (int k = 1; k <= ctx->trunc; ++k) {
        pw = mul(pw, x);
        acc += pw;
    }
    return acc;
}

DynTensor place(const DynTensor& a, int i, int j, int n) {
    if (a.arity() != 2) throw Error("place expects an arity-2 tensor");
    if (i < 1 || i > n || j < 1 || j > n || i == j) throw SlotOutOfRange(i == j ? i : (i < 1 || i > n ? i : j), n);
    DynTensor out(a.context(), n);
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            LegTuple ext(n);
            ext[i - 1] = legs[0];
            ext[j - 1] = legs[1];
            out.add_term(k, ext, c);
        }
    }
    return out;
}

DynTensor permute_legs(const DynTensor& a, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != a.arity()) throw Error("permutation length mismatch");
    DynTensor out(a.context(), a.arity());
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            LegTuple ext(a.arity());
            for (int s = 0; s < a.arity(); ++s) ext[s] = legs[perm[s] - 1];
            out.add_term(k, ext, c);
        }
    }
    return out;
}

DynTensor coproduct_at(const DynTensor& a, int slot) {
    if (slot < 1 || slot > a.arity()) throw SlotOutOfRange(slot, a.arity());
    DynTensor out(a.context(), a.arity() + 1);
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            for (const auto& [left, right] : word_splits(legs[slot - 1])) {
                LegTuple ext;
                ext.reserve(a.arity() + 1);
                for (int s = 0; s < slot - 1; ++s) ext.push_back(legs[s]);
                ext.push_back(left);
                ext.push_back(right);
                for (int s = slot; s < a.arity(); ++s) ext.push_back(legs[s]);
                out.add_term(k, ext, c);
            }
        }
    }
    return out;
}

DynTensor counit_at(const DynTensor& a, int slot) {
    if (slot < 1 || slot > a.arity()) throw SlotOutOfRange(slot, a.arity());
    if (a.arity() < 2) throw Error("counit would produce arity 0");
    DynTensor out(a.context(), a.arity() - 1);
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            if (!legs[slot - 1].empty()) continue;
            LegTuple ext;
            ext.reserve(a.arity() - 1);
            for (int s = 0; s < a.arity(); ++s)
                if (s != slot - 1) ext.push_back(legs[s]);
            out.add_term(k, ext, c);
        }
    }
    return out;
}

DynTensor shift_insert(const DynTensor& a, int slot) {
    if (slot < 1 || slot > a.arity()) throw SlotOutOfRange(slot, a.arity());
    const auto& ctx = a.context();
    for (int k = 0; k <= a.trunc(); ++k)
        for (const auto& [legs, c] : a.order(k))
            if (!legs[slot - 1].empty()) throw SlotNotFree(slot);
    DynTensor out(ctx, a.arity());
    int l = ctx->dec.base_dim();
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            ShiftImage sh = shift_expr(*ctx->pbw, c);
            for (int d = 0; k + d <= a.trunc(); ++d) {
                for (const auto& [hword, coeff] : sh.orders[d]) {
                    Word gword;
                    gword.reserve(hword.size());
                    for (int idx : hword) {
                        if (idx < 0 || idx >= l) throw Error("shift word leaves the base");
                        gword.push_back(ctx->dec.base[idx]);
                    }
                    LegTuple ext = legs;
                    ext[slot - 1] = std::move(gword);
                    out.add_term(k + d, ext, coeff);
                }
            }
        }
    }
    return out;
}

DynTensor diff(const DynTensor& a, int var) {
    DynTensor out(a.context(), a.arity());
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            ScalarExpr d = c.diff(var);
            if (!d.is_const_zero()) out.add_term(k, legs, d);
        }
    }
    return out;
}

DynTensor equivariance_residual_F(const DynTensor& a, const BaseStructure& base, int i) {
    const auto& ctx = a.context();
    int hg = ctx->dec.base[i]; // g index of h_i
    DynTensor out(ctx, a.arity());
    for (int k = 0; k <= a.trunc(); ++k) {
        for (const auto& [legs, c] : a.order(k)) {
            for (int s = 0; s < a.arity(); ++s) {
                const Word& w = legs[s];
                for (std::size_t pos = 0; pos < w.size(); ++pos) {
                    for (const auto& [t, sc] : ctx->g->bracket_basis(hg, w[pos])) {
                        LegTuple ext = legs;
                        ext[s][pos] = t;
                        out.add_term(k, ext, c * ScalarExpr::constant(sc));
                    }
                }
            }
        }
    }
    for (int j = 0; j < base.l; ++j) {
        if (base(i, j).is_const_zero()) continue;
        out += diff(a, j).scaled(base(i, j));
    }
    return out;
}

DynTensor cocycle_residual(const DynTensor& f) {
    if (f.arity() != 2) throw Error("cocycle residual expects an arity-2 tensor");
    DynTensor lhs = mul(coproduct_at(f, 1), shift_insert(place(f, 1, 2, 3), 3));
    DynTensor rhs = mul(coproduct_at(f, 2), place(f, 2, 3, 3));
    return lhs - rhs;
}

std::pair<DynTensor, DynTensor> counit_check(const DynTensor& f) {
    if (f.arity() != 2) throw Error("counit check expects an arity-2 tensor");
    DynTensor one = DynTensor::unit(f.context(), 1);
    return {counit_at(f, 1) - one, counit_at(f, 2) - one};
}

DynTensor r_from_twist(const DynTensor& f) {
    if (f.arity() != 2) throw Error("twist must have arity 2");
    return mul(invert(place(f, 2, 1, 2)), f);
}

DynTensor qdybe_residual(const DynTensor& r) {
    if (r.arity() != 2) throw Error("R must have arity 2");
    DynTensor r12 = place(r, 1, 2, 3);
    DynTensor r13 = place(r, 1, 3, 3);
    DynTensor r23 = place(r, 2, 3, 3);
    DynTensor lhs = mul(mul(r12, shift_insert(r13, 2)), r23);
    DynTensor rhs = mul(mul(shift_insert(r23, 1), r13), shift_insert(r12, 3));
    return lhs - rhs;
}

DynTensor phi(const DynTensor& f) {
    if (f.arity() != 2) throw Error("twist must have arity 2");
    DynTensor f23 = place(f, 2, 3, 3);
    DynTensor f12 = place(f, 1, 2, 3);
    return mul(mul(mul(invert(f23), invert(coproduct_at(f, 2))), coproduct_at(f, 1)), f12);
}

DynTensor phi_shift_form(const DynTensor& f) {
    DynTensor f12 = place(f, 1, 2, 3);
    return mul(invert(shift_insert(f12, 3)), f12);
}

DynTensor twisted_coproduct(const DynTensor& f, const DynTensor& a) {
    if (a.arity() != 1) throw Error("twisted coproduct expects an arity-1 element");
    return mul(mul(invert(f), coproduct_at(a, 1)), f);
}

LemmaReport lemma_check(const DynTensor& f) {
    DynTensor r = r_from_twist(f);
    DynTensor f12 = place(f, 1, 2, 3);
    DynTensor f23 = place(f, 2, 3, 3);
    DynTensor p = phi(f);
    DynTensor r12 = place(r, 1, 2, 3);
    DynTensor r13 = place(r, 1, 3, 3);
    DynTensor r23 = place(r, 2, 3, 3);

    DynTensor lhs_left = mul(mul(invert(f12), coproduct_at(r, 1)), f12);
    DynTensor rhs_left = mul(
        mul(mul(mul(permute_legs(p, {2, 3, 1}), r13), invert(permute_legs(p, {1, 3, 2}))), r23), p);

    DynTensor lhs_right = mul(mul(invert(f23), coproduct_at(r, 2)), f23);
    DynTensor rhs_right = mul(
        mul(mul(mul(invert(permute_legs(p, {3, 1, 2})), r13), permute_legs(p, {2, 1, 3})), r12),
        invert(p));

    DynTensor lhs_conj = mul(mul(permute_legs(p, {2, 1, 3}), r12), invert(p));
    DynTensor rhs_conj = shift_insert(r12, 3);

    return {lhs_left - rhs_left, lhs_right - rhs_right, lhs_conj - rhs_conj};
}

DynTensor exp_twist(const QContextPtr& ctx, const std::vector<ExpTwistTerm>& terms) {
    DynTensor x(ctx, 2);
    for (const auto& t : terms)
        x.add_term(1, {Word{t.x}, Word{t.y}}, ScalarExpr::constant(t.t));
    DynTensor acc = DynTensor::unit(ctx, 2);
    DynTensor pw = DynTensor::unit(ctx, 2);
    for (int k = 1; k <= ctx->trunc; ++k) {
        pw = mul(pw, x);
        acc += pw.scaled(ScalarExpr::constant(factorial(static_cast<unsigned>(k)).inv()));
    }
    return acc;
}

DynTensor r_as_tensor(const QContextPtr& ctx, const DynamicalR& r) {
    DynTensor out(ctx, 2);
    for (const auto& [t, c] : r.r.terms()) {
        if (t.size() != 2) throw Error("r-matrix must be a bivector");
        out.add_term(0, {Word{t[0]}, Word{t[1]}}, c);
        out.add_term(0, {Word{t[1]}, Word{t[0]}}, -c);
    }
    return out;
}

Multivector alt3(const DynTensor& t, int k, const ZeroOptions& opts) {
    if (t.arity() != 3) throw Error("alt3 expects an arity-3 tensor");
    Multivector out(t.context()->g);
    ScalarExpr sixth = ScalarExpr::constant(Rational(1, 6));
    for (const auto& [legs, c] : t.order(k)) {
        bool pure = true;
        for (const Word& w : legs)
            if (w.size() != 1) { pure = false; break; }
        if (!pure) {
            if (!test_zero(c, opts).zero)
                throw Error("tensor coefficient of mixed degree does not vanish: " + c.str());
            continue;
        }
        out.add_term({legs[0][0], legs[1][0], legs[2][0]}, c * sixth);
    }
    return out;
}

std::vector<TensorCheck> check_zero(const DynTensor& t, const ZeroOptions& opts, int threads) {
    std::vector<std::pair<int, std::pair<std::string, ScalarExpr>>> items;
    for (int k = 0; k <= t.trunc(); ++k) {
        for (const auto& [legs, c] : t.order(k)) {
            std::string name;
            for (std::size_t s = 0; s < legs.size(); ++s) {
                if (s) name += "|";
                name += word_str(*t.context()->g, legs[s]);
            }
            items.emplace_back(k, std::make_pair(std::move(name), c));
        }
    }
    std::vector<TensorCheck> out(items.size());
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx)
            out[idx] = {items[idx].first, items[idx].second.first,
                        test_zero(items[idx].second.second, opts)};
    };
    if (threads <= 1 || items.size() < 2) {
        worker(0, items.size());
    } else {
        int nt = std::min<int>(threads, static_cast<int>(items.size()));
        std::vector<std::thread> pool;
        std::size_t chunk = (items.size() + nt - 1) / nt;
        for (int t2 = 0; t2 < nt; ++t2) {
            std::size_t lo = t2 * chunk;
            std::size_t hi = std::min(items.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

bool all_zero(const std::vector<TensorCheck>& checks) {
    for (const auto& c : checks)
        if (!c.verdict.zero) return false;
    return true;
}

bool is_zero(const DynTensor& t, const ZeroOptions& opts, int threads) {
    return all_zero(check_zero(t, opts, threads));
}

} // namespace dynrmat
