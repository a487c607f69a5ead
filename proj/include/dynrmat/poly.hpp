#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dynrmat/rational.hpp"

namespace dynrmat {

// Exponent multi-index over the base coordinates; length = number of variables.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

// Sparse multivariate polynomial over Rational. Zero coefficients are never
// stored; two polynomials are equal iff their term maps are equal.
class Poly {
public:
    explicit Poly(int nvars = 0) : nvars_(nvars) {}
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int i);
    static Poly monomial(int nvars, Exponents e, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    unsigned degree() const; // total degree; 0 for the zero polynomial
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b); // arbitrary total order, for map keys

    Poly diff(int var) const;
    Rational eval(std::span<const Rational> point) const;
    // substitute point[i] for the variables listed in `vars` (partial evaluation)
    Poly eval_partial(const std::vector<int>& vars, const std::vector<Rational>& vals) const;

    Rational constant_term() const;
    Rational coefficient(const Exponents& e) const;

    std::string str(const std::vector<std::string>& var_names = {}) const;

private:
    int nvars_;
    std::map<Exponents, Rational> terms_;
};

} // namespace dynrmat
