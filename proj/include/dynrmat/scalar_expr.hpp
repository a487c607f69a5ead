#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynrmat/poly.hpp"
#include "dynrmat/rational.hpp"

namespace dynrmat {

// Numerator/denominator pair after clearing divisions; no gcd normalization.
struct RationalForm {
    Poly num;
    Poly den;
};

// Immutable rational-function expression tree over coordinates l1..ln
// (variable indices are 0-based internally). Construction folds constants and
// additive/multiplicative identities, so structurally trivial zeros collapse.
class ScalarExpr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Div };

    ScalarExpr() : ScalarExpr(constant(Rational(0))) {}
    ScalarExpr(const Rational& c) : ScalarExpr(constant(c)) {} // NOLINT(google-explicit-constructor)
    ScalarExpr(long c) : ScalarExpr(constant(Rational(c))) {}  // NOLINT(google-explicit-constructor)
    ScalarExpr(int c) : ScalarExpr(constant(Rational(c))) {}   // NOLINT(google-explicit-constructor)

    static ScalarExpr constant(const Rational& c);
    static ScalarExpr variable(int index); // 0-based

    Kind kind() const { return n_->kind; }
    const Rational& const_value() const { return n_->cval; }
    int var_index() const { return n_->var; }
    ScalarExpr lhs() const { return ScalarExpr(n_->a); }
    ScalarExpr rhs() const { return ScalarExpr(n_->b); }

    bool is_const() const { return n_->kind == Kind::Const; }
    bool is_const_zero() const { return is_const() && n_->cval.is_zero(); }
    bool is_const_one() const { return is_const() && n_->cval.is_one(); }

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o) { *this = *this + o; return *this; }
    ScalarExpr& operator-=(const ScalarExpr& o) { *this = *this - o; return *this; }
    ScalarExpr& operator*=(const ScalarExpr& o) { *this = *this * o; return *this; }

    // Exact value at a point; throws DivisionByZero naming the subexpression.
    Rational eval(std::span<const Rational> point) const;

    // Exact partial derivative d/d(var); quotient rule on Div nodes.
    ScalarExpr diff(int var) const;

    // Substitute expressions for variables (used by the lambda -> lambda - mu shift).
    ScalarExpr substitute(const std::vector<ScalarExpr>& replacement) const;

    // Clear denominators by cross-multiplication into num/den polynomials over
    // `nvars` variables. Throws ExpansionTooLarge past `term_budget` monomials
    // and DivisionByZero if a divisor is the zero polynomial.
    RationalForm rational_form(int nvars, std::size_t term_budget) const;

    // 1 + highest variable index mentioned (0 if none).
    int min_nvars() const;

    // upper bounds on numerator/denominator total degree after clearing
    std::pair<long, long> degree_bound() const;

    std::string str() const; // parseable form: rationals, l<k>, + - * /, parens

private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        Kind kind;
        Rational cval;
        int var = -1;
        NodePtr a, b;
        Node(Kind k, Rational c) : kind(k), cval(std::move(c)) {}
        Node(Kind k, int v) : kind(k), var(v) {}
        Node(Kind k, NodePtr x, NodePtr y) : kind(k), a(std::move(x)), b(std::move(y)) {}
    };
    explicit ScalarExpr(NodePtr n) : n_(std::move(n)) {}
    static ScalarExpr make(Kind k, const ScalarExpr& a, const ScalarExpr& b);

    Rational eval_node(std::span<const Rational> point) const;

    NodePtr n_;
};

// Embed a polynomial as an expression tree.
ScalarExpr poly_to_expr(const Poly& p);

} // namespace dynrmat
