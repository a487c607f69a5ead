#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dynrmat/hseries.hpp"
#include "dynrmat/lie_algebra.hpp"
#include "dynrmat/rational.hpp"

namespace dynrmat {

// Word in the enveloping algebra: a sequence of basis indices. Normal-ordered
// means non-decreasing.
using Word = std::vector<int>;

template <class C>
using WordSum = std::map<Word, C>;

bool is_normal_ordered(const Word& w);
std::string word_str(const LieAlgebra& alg, const Word& w);

// Normal ordering in the ordinary enveloping algebra U(g): rewrites adjacent
// out-of-order pairs x_j x_i (j > i) as x_i x_j + [x_j, x_i] until every word
// is non-decreasing.
WordSum<Rational> normal_order(const LieAlgebra& alg, const Word& w);

// Normal ordering in U(g_hbar) where [X,Y]_hbar = hbar [X,Y]: each rewriting
// step carries exactly one power of hbar. Truncation discards orders > trunc.
WordSum<HSeries<Rational>> normal_order_hbar(const LieAlgebra& alg, const Word& w, int trunc);

// Element of U(g_hbar), canonical: every stored word is normal-ordered. This
// is the carrier of the PBW machinery over the base subalgebra h.
class UEElement {
public:
    UEElement(LieAlgebraPtr alg, int trunc) : alg_(std::move(alg)), trunc_(trunc) {}
    static UEElement unit(LieAlgebraPtr alg, int trunc);
    // a single generator word (normal-orders it first)
    static UEElement from_word(LieAlgebraPtr alg, int trunc, const Word& w);

    const LieAlgebraPtr& algebra() const { return alg_; }
    int trunc() const { return trunc_; }
    const WordSum<HSeries<Rational>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // max word length

    void add_term(const Word& normal_ordered, const HSeries<Rational>& c);

    UEElement operator-() const;
    UEElement& operator+=(const UEElement& o);
    UEElement& operator-=(const UEElement& o);
    friend UEElement operator+(UEElement a, const UEElement& b) { a += b; return a; }
    friend UEElement operator-(UEElement a, const UEElement& b) { a -= b; return a; }
    friend UEElement operator*(const UEElement& a, const UEElement& b); // U(g_hbar) product
    UEElement scaled(const Rational& c) const;
    UEElement scaled_series(const HSeries<Rational>& c) const;

    friend bool operator==(const UEElement& a, const UEElement& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    LieAlgebraPtr alg_;
    int trunc_;
    WordSum<HSeries<Rational>> terms_;
};

// Hopf operations on U(g_hbar) with primitive generators.
// counit: kills every nonempty word.
HSeries<Rational> counit(const UEElement& u);

// All order-preserving two-block splits of a word: Delta(w) = sum_S w_S (x) w_{S^c}.
std::vector<std::pair<Word, Word>> word_splits(const Word& w);

// n-fold tensor over U(g_hbar) with hbar-series coefficients; enough Hopf
// machinery to state coassociativity and morphism properties.
class UETensor {
public:
    UETensor(LieAlgebraPtr alg, int arity, int trunc)
        : alg_(std::move(alg)), arity_(arity), trunc_(trunc) {}
    static UETensor unit(LieAlgebraPtr alg, int arity, int trunc);

    int arity() const { return arity_; }
    const std::map<std::vector<Word>, HSeries<Rational>>& terms() const { return terms_; }

    void add_term(const std::vector<Word>& legs, const HSeries<Rational>& c); // normal-orders each leg

    UETensor& operator+=(const UETensor& o);
    UETensor& operator-=(const UETensor& o);
    friend UETensor operator+(UETensor a, const UETensor& b) { a += b; return a; }
    friend UETensor operator-(UETensor a, const UETensor& b) { a -= b; return a; }
    friend UETensor operator*(const UETensor& a, const UETensor& b); // slotwise U(g_hbar) product

    // coproduct on one slot (1-based): arity n -> n+1, slot splits in two
    UETensor coproduct_at(int slot) const;
    // counit on one slot (1-based): arity n -> n-1
    UETensor counit_at(int slot) const;

    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const UETensor& a, const UETensor& b) { return a.terms_ == b.terms_; }

private:
    LieAlgebraPtr alg_;
    int arity_;
    int trunc_;
    std::map<std::vector<Word>, HSeries<Rational>> terms_;
};

UETensor coproduct(const UEElement& u); // arity-2 tensor

} // namespace dynrmat
