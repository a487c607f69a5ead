#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dynrmat/dynamical_r.hpp"
#include "dynrmat/enveloping.hpp"
#include "dynrmat/multivector.hpp"
#include "dynrmat/star_product.hpp"
#include "dynrmat/zero_test.hpp"

namespace dynrmat {

// Shared context for the hbar-series tensor engine: the ambient algebra g, a
// reductive decomposition fixing the base h (whose dual carries lambda), the
// PBW machinery over h, and the truncation order.
struct QContext {
    LieAlgebraPtr g;
    Decomposition dec;
    LieAlgebraPtr base;      // restricted base algebra, local indices 0..l-1
    PBWContextPtr pbw;       // over `base`
    int trunc = 4;
    int word_budget = 24;    // max enveloping-monomial degree per slot
};
using QContextPtr = std::shared_ptr<const QContext>;

QContextPtr make_qcontext(const Decomposition& dec, int trunc, int word_budget = 24);

using LegTuple = std::vector<Word>; // one normal-ordered g-word per slot

// Element of C^inf(h*) (x) (Ug)^{(x)n} [[hbar]], truncated: per hbar order, a
// sparse map from leg tuples to ScalarExpr coefficients. Scalars multiply with
// the PBW-star product, legs slotwise in the ordinary Ug.
class DynTensor {
public:
    DynTensor(QContextPtr ctx, int arity);
    static DynTensor unit(QContextPtr ctx, int arity);

    const QContextPtr& context() const { return ctx_; }
    int arity() const { return arity_; }
    int trunc() const { return ctx_->trunc; }
    const std::map<LegTuple, ScalarExpr>& order(int k) const { return ord_.at(k); }

    // adds c * hbar^order * legs (legs are normal-ordered first)
    void add_term(int order, const LegTuple& legs, const ScalarExpr& c);

    DynTensor operator-() const;
    DynTensor& operator+=(const DynTensor& o);
    DynTensor& operator-=(const DynTensor& o);
    friend DynTensor operator+(DynTensor a, const DynTensor& b) { a += b; return a; }
    friend DynTensor operator-(DynTensor a, const DynTensor& b) { a -= b; return a; }

    // coefficient-wise scaling (plain product, not star) - a construction aid
    DynTensor scaled(const ScalarExpr& c) const;
    // multiply by hbar^k
    DynTensor hbar_shifted(int k) const;

    bool is_unital() const; // order-0 part equals 1^{(x)n}
    int max_word_degree() const;
    std::string str() const;

private:
    QContextPtr ctx_;
    int arity_;
    std::vector<std::map<LegTuple, ScalarExpr>> ord_;
};

// star-multiplication in C^inf(h*) (x) (Ug)^n [[hbar]]
DynTensor mul(const DynTensor& a, const DynTensor& b);

// inverse of a unital tensor via the geometric series; throws NotUnital
DynTensor invert(const DynTensor& a);

// legs of an arity-2 tensor moved to slots (i, j) of an arity-n tensor
// (1-based, order-sensitive: place(A, 2, 1, 2) is A21)
DynTensor place(const DynTensor& a, int i, int j, int n);

// slot i of the result carries factor perm[i-1] of the input (1-based),
// matching subscript notation: permute_legs(Phi, {2,3,1}) is Phi_231
DynTensor permute_legs(const DynTensor& a, const std::vector<int>& perm);

// coproduct applied to one slot (slot splits into (slot, slot+1)); arity grows
DynTensor coproduct_at(const DynTensor& a, int slot);
// counit applied to one slot; arity shrinks
DynTensor counit_at(const DynTensor& a, int slot);

// lambda -> lambda + hbar h^{(slot)}: every coefficient f is replaced by its
// shift series, with the U(h) parts multiplied into `slot` (which must carry
// only identity legs; throws SlotNotFree otherwise)
DynTensor shift_insert(const DynTensor& a, int slot);

// coefficient-wise d/d lambda_var
DynTensor diff(const DynTensor& a, int var);

// (sum over slots of ad_{h_i}) A + sum_j f_ij dA/dlambda_j, the infinitesimal
// H-equivariance residual in base direction i (0-based local)
DynTensor equivariance_residual_F(const DynTensor& a, const BaseStructure& base, int i);

// twisted-cocycle residual:
//   (Delta (x) id)F * F_12(lambda + hbar h^(3)) - (id (x) Delta)F * F_23(lambda)
DynTensor cocycle_residual(const DynTensor& f);

// the two counit contractions minus 1
std::pair<DynTensor, DynTensor> counit_check(const DynTensor& f);

// R = F_21^{-1} * F_12
DynTensor r_from_twist(const DynTensor& f);

// generalized QDYBE residual:
//   R12 R13(+h^2) R23 - R23(+h^1) R13 R12(+h^3)
DynTensor qdybe_residual(const DynTensor& r);

// Phi_123 = F_23^{-1} * [(id (x) Delta)F]^{-1} * [(Delta (x) id)F] * F_12
DynTensor phi(const DynTensor& f);
// the equivalent form under the cocycle condition: F_12(+h^3)^{-1} * F_12
DynTensor phi_shift_form(const DynTensor& f);

// twisted coproduct of an arity-1 element: F^{-1} * Delta(a) * F
DynTensor twisted_coproduct(const DynTensor& f, const DynTensor& a);

struct LemmaReport {
    DynTensor res_delta_left;   // (twisted-Delta (x) id)R - Phi_231 R13 Phi_132^{-1} R23 Phi_123
    DynTensor res_delta_right;  // (id (x) twisted-Delta)R - Phi_312^{-1} R13 Phi_213 R12 Phi_123^{-1}
    DynTensor res_conjugation;  // Phi_213 R12 Phi_123^{-1} - R12(lambda + hbar h^(3))
};
LemmaReport lemma_check(const DynTensor& f);

// exponential twist exp(hbar sum_a t_a x_a (x) y_a), truncated
struct ExpTwistTerm {
    Rational t;
    int x, y; // g basis indices
};
DynTensor exp_twist(const QContextPtr& ctx, const std::vector<ExpTwistTerm>& terms);

// skew embedding Lambda^2 g -> g (x) g of a dynamical r-matrix
DynTensor r_as_tensor(const QContextPtr& ctx, const DynamicalR& r);

// total antisymmetrization of the hbar^k coefficient of an arity-3 tensor,
// mapping (1,1,1)-degree terms into Lambda^3 g with a 1/3! normalization.
// Non-(1,1,1) terms must vanish identically (checked; throws otherwise).
Multivector alt3(const DynTensor& t, int k, const ZeroOptions& opts);

// per-coefficient zero verdicts
struct TensorCheck {
    int order;
    std::string legs;
    ZeroVerdict verdict;
};
std::vector<TensorCheck> check_zero(const DynTensor& t, const ZeroOptions& opts, int threads = 1);
bool all_zero(const std::vector<TensorCheck>& checks);
bool is_zero(const DynTensor& t, const ZeroOptions& opts, int threads = 1);

} // namespace dynrmat
