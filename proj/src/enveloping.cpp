#include "dynrmat/enveloping.hpp"

#include <algorithm>
#include <sstream>

#include "dynrmat/errors.hpp"

namespace dynrmat {

bool is_normal_ordered(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] > w[i]) return false;
    return true;
}

std::string word_str(const LieAlgebra& alg, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += alg.label(w[i]);
    }
    return s;
}

namespace {

// Shared rewriting engine. hbar_step = 1 gives U(g_hbar), 0 gives U(g): the
// bracket term of each rewrite is weighted by hbar^step.
void normal_order_impl(const LieAlgebra& alg, const Word& w0, int trunc, int hbar_step,
                       WordSum<HSeries<Rational>>& out) {
    HSeries<Rational> one = HSeries<Rational>::unit(trunc, Rational(0), Rational(1));
    std::vector<std::pair<Word, HSeries<Rational>>> work;
    work.emplace_back(w0, one);
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        std::size_t bad = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                bad = i;
                break;
            }
        }
        if (bad == w.size()) {
            auto it = out.find(w);
            if (it == out.end()) out.emplace(std::move(w), c);
            else {
                it->second += c;
            }
            continue;
        }
        Word swapped = w;
        std::swap(swapped[bad], swapped[bad + 1]);
        work.emplace_back(std::move(swapped), c);
        // bracket term [x_j, x_i], weighted by hbar^step
        HSeries<Rational> cb = hbar_step == 0 ? c : c.shifted(hbar_step);
        bool vanishes = true;
        for (int k = 0; k <= cb.truncation(); ++k)
            if (!cb[k].is_zero()) { vanishes = false; break; }
        if (vanishes) continue;
        for (const auto& [k, sc] : alg.bracket_basis(w[bad], w[bad + 1])) {
            Word reduced;
            reduced.reserve(w.size() - 1);
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i == bad) reduced.push_back(k);
                else if (i != bad + 1) reduced.push_back(w[i]);
            }
            work.emplace_back(std::move(reduced), cb.scaled(sc));
        }
    }
    std::erase_if(out, [](const auto& t) {
        for (int k = 0; k <= t.second.truncation(); ++k)
            if (!t.second[k].is_zero()) return false;
        return true;
    });
}

} // namespace

WordSum<Rational> normal_order(const LieAlgebra& alg, const Word& w) {
    WordSum<HSeries<Rational>> tmp;
    normal_order_impl(alg, w, 0, 0, tmp);
    WordSum<Rational> out;
    for (const auto& [word, c] : tmp)
        if (!c[0].is_zero()) out.emplace(word, c[0]);
    return out;
}

WordSum<HSeries<Rational>> normal_order_hbar(const LieAlgebra& alg, const Word& w, int trunc) {
    WordSum<HSeries<Rational>> out;
    normal_order_impl(alg, w, trunc, 1, out);
    return out;
}

UEElement UEElement::unit(LieAlgebraPtr alg, int trunc) {
    UEElement u(std::move(alg), trunc);
    u.terms_.emplace(Word{}, HSeries<Rational>::unit(trunc, Rational(0), Rational(1)));
    return u;
}

UEElement UEElement::from_word(LieAlgebraPtr alg, int trunc, const Word& w) {
    UEElement u(alg, trunc);
    for (auto& [word, c] : normal_order_hbar(*alg, w, trunc)) u.add_term(word, c);
    return u;
}

int UEElement::degree() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max<int>(d, static_cast<int>(w.size()));
    return d;
}

void UEElement::add_term(const Word& w, const HSeries<Rational>& c) {
    if (!is_normal_ordered(w)) throw Error("UEElement terms must be normal-ordered");
    auto it = terms_.find(w);
    if (it == terms_.end()) it = terms_.emplace(w, HSeries<Rational>(trunc_, Rational(0))).first;
    it->second += c;
    bool zero = true;
    for (int k = 0; k <= trunc_; ++k)
        if (!it->second[k].is_zero()) { zero = false; break; }
    if (zero) terms_.erase(it);
}

UEElement UEElement::operator-() const {
    UEElement out(alg_, trunc_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

UEElement& UEElement::operator+=(const UEElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

UEElement& UEElement::operator-=(const UEElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

UEElement operator*(const UEElement& a, const UEElement& b) {
    UEElement out(a.alg_, a.trunc_);
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            HSeries<Rational> c = ca * cb;
            for (auto& [word, k] : normal_order_hbar(*a.alg_, w, a.trunc_)) out.add_term(word, c * k);
        }
    }
    return out;
}

UEElement UEElement::scaled(const Rational& c) const {
    UEElement out(alg_, trunc_);
    if (c.is_zero()) return out;
    for (const auto& [w, k] : terms_) out.terms_.emplace(w, k.scaled(c));
    return out;
}

UEElement UEElement::scaled_series(const HSeries<Rational>& c) const {
    UEElement out(alg_, trunc_);
    for (const auto& [w, k] : terms_) out.add_term(w, k * c);
    return out;
}

std::string UEElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[";
        for (int k = 0; k <= trunc_; ++k) {
            if (k) os << ",";
            os << c[k].str();
        }
        os << "]*" << word_str(*alg_, w);
    }
    return os.str();
}

HSeries<Rational> counit(const UEElement& u) {
    HSeries<Rational> out(u.trunc(), Rational(0));
    auto it = u.terms().find(Word{});
    if (it != u.terms().end()) out = it->second;
    return out;
}

std::vector<std::pair<Word, Word>> word_splits(const Word& w) {
    std::vector<std::pair<Word, Word>> out;
    std::size_t n = w.size();
    if (n > 30) throw Error("word too long for coproduct expansion");
    out.reserve(std::size_t(1) << n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Word left, right;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t(1) << i)) left.push_back(w[i]);
            else right.push_back(w[i]);
        }
        out.emplace_back(std::move(left), std::move(right));
    }
    return out;
}

UETensor UETensor::unit(LieAlgebraPtr alg, int arity, int trunc) {
    UETensor t(std::move(alg), arity, trunc);
    t.terms_.emplace(std::vector<Word>(arity), HSeries<Rational>::unit(trunc, Rational(0), Rational(1)));
    return t;
}

void UETensor::add_term(const std::vector<Word>& legs, const HSeries<Rational>& c) {
    if (static_cast<int>(legs.size()) != arity_) throw Error("tensor arity mismatch");
    // normal-order each leg, distributing over the resulting sums
    std::vector<std::pair<std::vector<Word>, HSeries<Rational>>> acc;
    acc.emplace_back(std::vector<Word>{}, c);
    for (const Word& leg : legs) {
        auto parts = normal_order_hbar(*alg_, leg, trunc_);
        std::vector<std::pair<std::vector<Word>, HSeries<Rational>>> next;
        for (auto& [legs_so_far, coeff] : acc) {
            for (const auto& [w, k] : parts) {
                auto ext = legs_so_far;
                ext.push_back(w);
                next.emplace_back(std::move(ext), coeff * k);
            }
        }
        acc = std::move(next);
    }
    for (auto& [key, coeff] : acc) {
        auto it = terms_.find(key);
        if (it == terms_.end()) it = terms_.emplace(key, HSeries<Rational>(trunc_, Rational(0))).first;
        it->second += coeff;
        bool zero = true;
        for (int k = 0; k <= trunc_; ++k)
            if (!it->second[k].is_zero()) { zero = false; break; }
        if (zero) terms_.erase(it);
    }
}

UETensor& UETensor::operator+=(const UETensor& o) {
    for (const auto& [legs, c] : o.terms_) add_term(legs, c);
    return *this;
}

UETensor& UETensor::operator-=(const UETensor& o) {
    for (const auto& [legs, c] : o.terms_) add_term(legs, -c);
    return *this;
}

UETensor operator*(const UETensor& a, const UETensor& b) {
    if (a.arity_ != b.arity_) throw Error("tensor arity mismatch");
    UETensor out(a.alg_, a.arity_, a.trunc_);
    for (const auto& [la, ca] : a.terms_) {
        for (const auto& [lb, cb] : b.terms_) {
            std::vector<Word> legs(a.arity_);
            for (int s = 0; s < a.arity_; ++s) {
                legs[s] = la[s];
                legs[s].insert(legs[s].end(), lb[s].begin(), lb[s].end());
            }
            out.add_term(legs, ca * cb);
        }
    }
    return out;
}

UETensor UETensor::coproduct_at(int slot) const {
    if (slot < 1 || slot > arity_) throw SlotOutOfRange(slot, arity_);
    UETensor out(alg_, arity_ + 1, trunc_);
    for (const auto& [legs, c] : terms_) {
        for (auto& [left, right] : word_splits(legs[slot - 1])) {
            std::vector<Word> ext;
            ext.reserve(arity_ + 1);
            for (int s = 0; s < slot - 1; ++s) ext.push_back(legs[s]);
            ext.push_back(left);
            ext.push_back(right);
            for (int s = slot; s < arity_; ++s) ext.push_back(legs[s]);
            out.add_term(ext, c);
        }
    }
    return out;
}

UETensor UETensor::counit_at(int slot) const {
    if (slot < 1 || slot > arity_) throw SlotOutOfRange(slot, arity_);
    UETensor out(alg_, arity_ - 1, trunc_);
    for (const auto& [legs, c] : terms_) {
        if (!legs[slot - 1].empty()) continue;
        std::vector<Word> ext;
        ext.reserve(arity_ - 1);
        for (int s = 0; s < arity_; ++s)
            if (s != slot - 1) ext.push_back(legs[s]);
        out.add_term(ext, c);
    }
    return out;
}

UETensor coproduct(const UEElement& u) {
    UETensor out(u.algebra(), 2, u.trunc());
    for (const auto& [w, c] : u.terms()) {
        for (auto& [left, right] : word_splits(w)) out.add_term({left, right}, c);
    }
    return out;
}

} // namespace dynrmat
