#include "dynrmat/multivector.hpp"

#include <algorithm>
#include <sstream>

#include "dynrmat/errors.hpp"

namespace dynrmat {

namespace {

bool same_algebra(const LieAlgebraPtr& a, const LieAlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

// sorts t in place; returns 0 if a repeated index occurs, else the sign
int sort_sign(IndexTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && t[j - 1] > t[j]) {
            std::swap(t[j - 1], t[j]);
            sign = -sign;
            --j;
        }
    }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}

} // namespace

Multivector Multivector::basis(LieAlgebraPtr alg, const IndexTuple& indices) {
    Multivector v(std::move(alg));
    v.add_term(indices, ScalarExpr(1));
    return v;
}

void Multivector::add_term(IndexTuple t, const ScalarExpr& c) {
    if (c.is_const_zero()) return;
    for (int i : t)
        if (i < 0 || i >= alg_->dim()) throw Error("basis index out of range");
    int sign = sort_sign(t);
    if (sign == 0) return;
    ScalarExpr v = sign == 1 ? c : -c;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(std::move(t), v);
    } else {
        it->second += v;
        if (it->second.is_const_zero()) terms_.erase(it);
    }
}

Multivector Multivector::operator-() const {
    Multivector out(alg_);
    for (const auto& [t, c] : terms_) out.terms_.emplace(t, -c);
    return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    if (!same_algebra(alg_, o.alg_)) throw Error("multivectors over different algebras");
    for (const auto& [t, c] : o.terms_) {
        auto it = terms_.find(t);
        if (it == terms_.end()) terms_.emplace(t, c);
        else {
            it->second += c;
            if (it->second.is_const_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
    *this += -o;
    return *this;
}

Multivector Multivector::scaled(const ScalarExpr& c) const {
    Multivector out(alg_);
    if (c.is_const_zero()) return out;
    for (const auto& [t, k] : terms_) out.terms_.emplace(t, k * c);
    return out;
}

Multivector Multivector::grade_part(int k) const {
    Multivector out(alg_);
    for (const auto& [t, c] : terms_)
        if (static_cast<int>(t.size()) == k) out.terms_.emplace(t, c);
    return out;
}

ScalarExpr Multivector::coefficient(const IndexTuple& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? ScalarExpr(0) : it->second;
}

Multivector Multivector::diff(int var) const {
    Multivector out(alg_);
    for (const auto& [t, c] : terms_) {
        ScalarExpr d = c.diff(var);
        if (!d.is_const_zero()) out.terms_.emplace(t, d);
    }
    return out;
}

Multivector Multivector::canonicalized(const ZeroOptions& opts) const {
    Multivector out(alg_);
    for (const auto& [t, c] : terms_)
        if (!test_zero(c, opts).zero) out.terms_.emplace(t, c);
    return out;
}

std::string Multivector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i : t) os << "^" << alg_->label(i);
    }
    return os.str();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    if (!same_algebra(a.algebra(), b.algebra())) throw Error("multivectors over different algebras");
    Multivector out(a.algebra());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            IndexTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_term(std::move(t), ca * cb);
        }
    }
    return out;
}

Multivector schouten(const Multivector& a, const Multivector& b) {
    if (!same_algebra(a.algebra(), b.algebra())) throw Error("multivectors over different algebras");
    const LieAlgebra& alg = *a.algebra();
    Multivector out(a.algebra());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            ScalarExpr cab = ca * cb;
            for (std::size_t i = 0; i < ta.size(); ++i) {
                for (std::size_t j = 0; j < tb.size(); ++j) {
                    const BracketTerms& br = alg.bracket_basis(ta[i], tb[j]);
                    if (br.empty()) continue;
                    // (-1)^{(i+1)+(j+1)} with 1-based positions
                    int sign = ((i + j) % 2 == 0) ? 1 : -1;
                    IndexTuple rest;
                    rest.reserve(ta.size() + tb.size() - 1);
                    rest.push_back(0); // placeholder for the bracket component
                    for (std::size_t p = 0; p < ta.size(); ++p)
                        if (p != i) rest.push_back(ta[p]);
                    for (std::size_t q = 0; q < tb.size(); ++q)
                        if (q != j) rest.push_back(tb[q]);
                    for (const auto& [k, c] : br) {
                        IndexTuple t = rest;
                        t[0] = k;
                        ScalarExpr coeff = cab * ScalarExpr::constant(sign == 1 ? c : -c);
                        out.add_term(std::move(t), coeff);
                    }
                }
            }
        }
    }
    return out;
}

Multivector ad_action(int h_index, const Multivector& a) {
    const LieAlgebra& alg = *a.algebra();
    if (h_index < 0 || h_index >= alg.dim()) throw Error("basis index out of range");
    Multivector out(a.algebra());
    for (const auto& [t, c] : a.terms()) {
        for (std::size_t pos = 0; pos < t.size(); ++pos) {
            for (const auto& [k, sc] : alg.bracket_basis(h_index, t[pos])) {
                IndexTuple u = t;
                u[pos] = k;
                out.add_term(std::move(u), c * ScalarExpr::constant(sc));
            }
        }
    }
    return out;
}

bool is_zero(const Multivector& a, const ZeroOptions& opts) {
    for (const auto& [t, c] : a.terms())
        if (!test_zero(c, opts).zero) return false;
    return true;
}

} // namespace dynrmat
