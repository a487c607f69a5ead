#include "dynrmat/scalar_expr.hpp"

#include <algorithm>
#include <sstream>

#include "dynrmat/errors.hpp"

namespace dynrmat {

ScalarExpr ScalarExpr::constant(const Rational& c) {
    return ScalarExpr(std::make_shared<const Node>(Kind::Const, c));
}

ScalarExpr ScalarExpr::variable(int index) {
    if (index < 0) throw Error("negative variable index");
    return ScalarExpr(std::make_shared<const Node>(Kind::Var, index));
}

ScalarExpr ScalarExpr::make(Kind k, const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(std::make_shared<const Node>(k, a.n_, b.n_));
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.is_const() && b.is_const()) return ScalarExpr::constant(a.const_value() + b.const_value());
    if (a.is_const_zero()) return b;
    if (b.is_const_zero()) return a;
    return ScalarExpr::make(ScalarExpr::Kind::Add, a, b);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.is_const() && b.is_const()) return ScalarExpr::constant(a.const_value() - b.const_value());
    if (b.is_const_zero()) return a;
    return ScalarExpr::make(ScalarExpr::Kind::Sub, a, b);
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.is_const() && b.is_const()) return ScalarExpr::constant(a.const_value() * b.const_value());
    if (a.is_const_zero() || b.is_const_zero()) return ScalarExpr::constant(Rational(0));
    if (a.is_const_one()) return b;
    if (b.is_const_one()) return a;
    return ScalarExpr::make(ScalarExpr::Kind::Mul, a, b);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
    if (b.is_const() && b.const_value().is_zero()) throw DivisionByZero(b.str());
    if (a.is_const() && b.is_const()) return ScalarExpr::constant(a.const_value() / b.const_value());
    if (a.is_const_zero()) return a; // as rational functions, 0/g = 0
    if (b.is_const_one()) return a;
    return ScalarExpr::make(ScalarExpr::Kind::Div, a, b);
}

ScalarExpr ScalarExpr::operator-() const { return ScalarExpr::constant(Rational(0)) - *this; }

Rational ScalarExpr::eval(std::span<const Rational> point) const { return eval_node(point); }

Rational ScalarExpr::eval_node(std::span<const Rational> point) const {
    switch (n_->kind) {
        case Kind::Const: return n_->cval;
        case Kind::Var:
            if (n_->var >= static_cast<int>(point.size())) throw Error("evaluation point too short");
            return point[n_->var];
        case Kind::Add: return lhs().eval_node(point) + rhs().eval_node(point);
        case Kind::Sub: return lhs().eval_node(point) - rhs().eval_node(point);
        case Kind::Mul: return lhs().eval_node(point) * rhs().eval_node(point);
        case Kind::Div: {
            Rational d = rhs().eval_node(point);
            if (d.is_zero()) throw DivisionByZero(rhs().str());
            return lhs().eval_node(point) / d;
        }
    }
    throw Error("corrupt expression node");
}

ScalarExpr ScalarExpr::diff(int var) const {
    switch (n_->kind) {
        case Kind::Const: return ScalarExpr::constant(Rational(0));
        case Kind::Var: return ScalarExpr::constant(Rational(n_->var == var ? 1 : 0));
        case Kind::Add: return lhs().diff(var) + rhs().diff(var);
        case Kind::Sub: return lhs().diff(var) - rhs().diff(var);
        case Kind::Mul: return lhs().diff(var) * rhs() + lhs() * rhs().diff(var);
        case Kind::Div:
            // (f/g)' = (f'g - f g') / g^2, kept as a single quotient so
            // repeated differentiation does not stack denominators
            return (lhs().diff(var) * rhs() - lhs() * rhs().diff(var)) / (rhs() * rhs());
    }
    throw Error("corrupt expression node");
}

ScalarExpr ScalarExpr::substitute(const std::vector<ScalarExpr>& replacement) const {
    switch (n_->kind) {
        case Kind::Const: return *this;
        case Kind::Var:
            if (n_->var < static_cast<int>(replacement.size())) return replacement[n_->var];
            return *this;
        case Kind::Add: return lhs().substitute(replacement) + rhs().substitute(replacement);
        case Kind::Sub: return lhs().substitute(replacement) - rhs().substitute(replacement);
        case Kind::Mul: return lhs().substitute(replacement) * rhs().substitute(replacement);
        case Kind::Div: return lhs().substitute(replacement) / rhs().substitute(replacement);
    }
    throw Error("corrupt expression node");
}

namespace {

void check_budget(const RationalForm& f, std::size_t budget) {
    std::size_t n = f.num.term_count() + f.den.term_count();
    if (n > budget) throw ExpansionTooLarge(n, budget);
}

// refuse a product whose term-pair count already dwarfs the budget, before
// spending the time to expand it
Poly budgeted_mul(const Poly& a, const Poly& b, std::size_t budget) {
    std::size_t pairs = a.term_count() * b.term_count();
    if (pairs > 2 * budget + 16) throw ExpansionTooLarge(pairs, budget);
    return a * b;
}

} // namespace

RationalForm ScalarExpr::rational_form(int nvars, std::size_t term_budget) const {
    RationalForm out{Poly(nvars), Poly::constant(nvars, Rational(1))};
    switch (n_->kind) {
        case Kind::Const:
            out.num = Poly::constant(nvars, n_->cval);
            return out;
        case Kind::Var:
            if (n_->var >= nvars) throw Error("variable index exceeds declared coordinate count");
            out.num = Poly::variable(nvars, n_->var);
            return out;
        case Kind::Add:
        case Kind::Sub: {
            RationalForm a = lhs().rational_form(nvars, term_budget);
            RationalForm b = rhs().rational_form(nvars, term_budget);
            Poly cross = budgeted_mul(b.num, a.den, term_budget);
            out.num = budgeted_mul(a.num, b.den, term_budget);
            if (n_->kind == Kind::Add) out.num += cross; else out.num -= cross;
            out.den = budgeted_mul(a.den, b.den, term_budget);
            check_budget(out, term_budget);
            return out;
        }
        case Kind::Mul: {
            RationalForm a = lhs().rational_form(nvars, term_budget);
            RationalForm b = rhs().rational_form(nvars, term_budget);
            out.num = budgeted_mul(a.num, b.num, term_budget);
            out.den = budgeted_mul(a.den, b.den, term_budget);
            check_budget(out, term_budget);
            return out;
        }
        case Kind::Div: {
            RationalForm a = lhs().rational_form(nvars, term_budget);
            RationalForm b = rhs().rational_form(nvars, term_budget);
            if (b.num.is_zero()) throw DivisionByZero(rhs().str());
            out.num = budgeted_mul(a.num, b.den, term_budget);
            out.den = budgeted_mul(a.den, b.num, term_budget);
            check_budget(out, term_budget);
            return out;
        }
    }
    throw Error("corrupt expression node");
}

int ScalarExpr::min_nvars() const {
    switch (n_->kind) {
        case Kind::Const: return 0;
        case Kind::Var: return n_->var + 1;
        default: {
            int a = lhs().min_nvars();
            int b = n_->b ? rhs().min_nvars() : 0;
            return std::max(a, b);
        }
    }
}

std::pair<long, long> ScalarExpr::degree_bound() const {
    switch (n_->kind) {
        case Kind::Const: return {0, 0};
        case Kind::Var: return {1, 0};
        case Kind::Add:
        case Kind::Sub: {
            auto [n1, d1] = lhs().degree_bound();
            auto [n2, d2] = rhs().degree_bound();
            return {std::max(n1 + d2, n2 + d1), d1 + d2};
        }
        case Kind::Mul: {
            auto [n1, d1] = lhs().degree_bound();
            auto [n2, d2] = rhs().degree_bound();
            return {n1 + n2, d1 + d2};
        }
        case Kind::Div: {
            auto [n1, d1] = lhs().degree_bound();
            auto [n2, d2] = rhs().degree_bound();
            return {n1 + d2, d1 + n2};
        }
    }
    throw Error("corrupt expression node");
}

namespace {

int precedence(ScalarExpr::Kind k) {
    switch (k) {
        case ScalarExpr::Kind::Add:
        case ScalarExpr::Kind::Sub: return 1;
        case ScalarExpr::Kind::Mul:
        case ScalarExpr::Kind::Div: return 2;
        default: return 3;
    }
}

void print(const ScalarExpr& e, std::ostringstream& os, int parent_prec, bool right_operand) {
    using Kind = ScalarExpr::Kind;
    Kind k = e.kind();
    if (k == Kind::Const) {
        const Rational& c = e.const_value();
        if (c.sign() < 0 && parent_prec > 0) {
            os << "(" << c.str() << ")";
        } else {
            os << c.str();
        }
        return;
    }
    if (k == Kind::Var) {
        os << "l" << (e.var_index() + 1);
        return;
    }
    int prec = precedence(k);
    bool need_parens = prec < parent_prec ||
                       (prec == parent_prec && right_operand);
    const char* op = k == Kind::Add ? "+" : k == Kind::Sub ? "-" : k == Kind::Mul ? "*" : "/";
    if (need_parens) os << "(";
    print(e.lhs(), os, prec, false);
    os << op;
    print(e.rhs(), os, prec, true);
    if (need_parens) os << ")";
}

} // namespace

std::string ScalarExpr::str() const {
    std::ostringstream os;
    print(*this, os, 0, false);
    return os.str();
}

ScalarExpr poly_to_expr(const Poly& p) {
    ScalarExpr acc = ScalarExpr::constant(Rational(0));
    for (const auto& [e, c] : p.terms()) {
        ScalarExpr t = ScalarExpr::constant(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t = t * ScalarExpr::variable(static_cast<int>(i));
        acc = acc + t;
    }
    return acc;
}

} // namespace dynrmat
