#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynrmat/lie_algebra.hpp"
#include "dynrmat/scalar_expr.hpp"
#include "dynrmat/zero_test.hpp"

namespace dynrmat {

// Strictly increasing basis-index tuple; () is the scalar (grade-0) slot.
using IndexTuple = std::vector<int>;

// Element of the exterior algebra of g with ScalarExpr coefficients. Terms are
// kept in canonical form (indices strictly increasing); inserting an unsorted
// tuple sorts it and tracks the permutation sign, repeated indices vanish.
class Multivector {
public:
    explicit Multivector(LieAlgebraPtr alg) : alg_(std::move(alg)) {}
    static Multivector basis(LieAlgebraPtr alg, const IndexTuple& indices);

    const LieAlgebraPtr& algebra() const { return alg_; }
    const std::map<IndexTuple, ScalarExpr>& terms() const { return terms_; }
    bool structurally_zero() const { return terms_.empty(); }

    // adds c * e_{t1} ^ ... ^ e_{tk}; t need not be sorted
    void add_term(IndexTuple t, const ScalarExpr& c);

    Multivector operator-() const;
    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    friend Multivector operator+(Multivector a, const Multivector& b) { a += b; return a; }
    friend Multivector operator-(Multivector a, const Multivector& b) { a -= b; return a; }
    Multivector scaled(const ScalarExpr& c) const;

    Multivector grade_part(int k) const;
    ScalarExpr coefficient(const IndexTuple& t) const;

    Multivector diff(int var) const; // coefficient-wise d/d lambda_var

    // drops coefficients that prove zero under the given options
    Multivector canonicalized(const ZeroOptions& opts) const;

    std::string str() const;

private:
    LieAlgebraPtr alg_;
    std::map<IndexTuple, ScalarExpr> terms_;
};

// Graded-commutative wedge product.
Multivector wedge(const Multivector& a, const Multivector& b);

// Schouten-type bracket: the graded-biderivation extension of the Lie bracket,
// [x1^..^xk, y1^..^ym] = sum_{i,j} (-1)^{i+j} [x_i,y_j] ^ x..(no i).. ^ y..(no j)..
// On grade-1 elements it is the Lie bracket; the graded symmetry is
// [a,b] = -(-1)^{(|a|-1)(|b|-1)} [b,a].
Multivector schouten(const Multivector& a, const Multivector& b);

// Derivation extension of x -> [e_h, x] to the exterior algebra; h_index is a
// basis index of g.
Multivector ad_action(int h_index, const Multivector& a);

// All coefficients vanish identically (per-coefficient zero test).
bool is_zero(const Multivector& a, const ZeroOptions& opts);

} // namespace dynrmat
