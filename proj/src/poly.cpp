#include "dynrmat/poly.hpp"

#include <algorithm>
#include <sstream>

#include "dynrmat/errors.hpp"

namespace dynrmat {

unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw Error("variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, Rational(1));
}

Poly Poly::monomial(int nvars, Exponents e, const Rational& c) {
    Poly p(nvars);
    if (static_cast<int>(e.size()) != nvars) throw Error("exponent length mismatch");
    p.add_term(e, c);
    return p;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw Error("polynomial variable-count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw Error("polynomial variable-count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw Error("polynomial variable-count mismatch");
    Poly out(a.nvars_);
    Exponents e(a.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly Poly::operator*(const Rational& c) const {
    Poly out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly out = Poly::constant(nvars_, Rational(1));
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ib != b.terms_.end();
}

Poly Poly::diff(int var) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return out;
}

Rational Poly::eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error("evaluation point length mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) t *= point[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

Poly Poly::eval_partial(const std::vector<int>& vars, const std::vector<Rational>& vals) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        Exponents d = e;
        for (std::size_t j = 0; j < vars.size(); ++j) {
            int v = vars[j];
            if (d[v] != 0) {
                t *= vals[j].pow(d[v]);
                d[v] = 0;
            }
        }
        out.add_term(d, t);
    }
    return out;
}

Rational Poly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational Poly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*";
            if (static_cast<std::size_t>(i) < var_names.size()) os << var_names[i];
            else os << "l" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

} // namespace dynrmat
