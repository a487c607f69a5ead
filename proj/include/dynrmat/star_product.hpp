#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "dynrmat/enveloping.hpp"
#include "dynrmat/hseries.hpp"
#include "dynrmat/poly.hpp"
#include "dynrmat/scalar_expr.hpp"

namespace dynrmat {

// One summand of a bidifferential operator: coeff(lambda) * d^alpha (x) d^beta.
struct BTableEntry {
    Exponents alpha;
    Exponents beta;
    Poly coeff;
};
using BTable = std::vector<BTableEntry>; // the hbar^k operator B_k

// PBW machinery over a base Lie algebra h (local indices 0..l-1), at a fixed
// hbar truncation. Symmetrization images and extracted bidifferential tables
// are memoized behind a single-writer lock, so a context can be shared.
class PBWContext {
public:
    PBWContext(LieAlgebraPtr h, int trunc);

    const LieAlgebraPtr& algebra() const { return h_; }
    int dim() const { return h_->dim(); }
    int trunc() const { return trunc_; }
    bool base_abelian() const { return abelian_; }

    // symmetrization sigma(lambda^alpha) in U(h_hbar), normal-ordered
    UEElement sigma_monomial(const Exponents& alpha) const;
    // symmetrization of h^alpha in the ordinary U(h) (no hbar grading)
    WordSum<Rational> sym_monomial_plain(const Exponents& alpha) const;

    // bidifferential tables B_1..B_trunc extracted against the star product on
    // monomial pairs of total degree <= solve_degree (default 2*trunc + 2) and
    // verified on 50 pseudorandom pairs of total degree solve_degree + 1.
    // Throws InterpolationInconsistent if verification fails.
    const std::vector<BTable>& b_tables(int solve_degree = -1) const;

private:
    LieAlgebraPtr h_;
    int trunc_;
    bool abelian_;
    mutable std::mutex mu_;
    mutable std::map<Exponents, UEElement> sigma_cache_;
    mutable std::map<Exponents, WordSum<Rational>> sym_cache_;
    mutable std::map<int, std::vector<BTable>> btables_;
};

using PBWContextPtr = std::shared_ptr<const PBWContext>;

// The PBW map S(h)[[hbar]] -> U(h_hbar) (linear extension of symmetrization).
UEElement sigma(const PBWContext& ctx, const Poly& f);

// Its two-sided inverse, by induction on the filtration degree. Throws
// NotInBaseSubalgebra if a word mentions an index outside the base.
HSeries<Poly> sigma_inv(const PBWContext& ctx, const UEElement& u);

// PBW-star product: sigma_inv(sigma(f) sigma(g)), truncated at the context
// order. Satisfies f*g = fg + (hbar/2){f,g} + O(hbar^2).
HSeries<Poly> star(const PBWContext& ctx, const Poly& f, const Poly& g);

// star extended to truncated series by convolution
HSeries<Poly> star_series(const PBWContext& ctx, const HSeries<Poly>& f, const HSeries<Poly>& g);

// Lie-Poisson bracket on polynomial functions of h*: {l_i, l_j} = <l,[h_i,h_j]>.
Poly lie_poisson(const LieAlgebra& h, const Poly& f, const Poly& g);

// star through the extracted B_k tables, valid for rational-function
// coefficients: sum_k hbar^k B_k(f, g) with derivatives on expression trees.
HSeries<ScalarExpr> star_expr(const PBWContext& ctx, const ScalarExpr& f, const ScalarExpr& g);

// f(lambda + hbar h): order-k coefficient sum_{|alpha|=k} (1/alpha!)
// d^alpha f (x) sym(h^alpha), with the h-products in the ordinary U(h).
struct ShiftImage {
    int trunc = 0;
    std::vector<WordSum<ScalarExpr>> orders; // index = hbar power
};
ShiftImage shift_expr(const PBWContext& ctx, const ScalarExpr& f);

// Element of (C^inf(h*)[[hbar]], star) (x) U(h)[[hbar]]: the algebra in which
// the shift is a morphism. Scalar parts multiply with star, h-legs with the
// ordinary U(h) product.
struct ShiftSeries {
    WordSum<HSeries<Poly>> terms; // h-word -> scalar series
};
ShiftSeries shift_poly(const PBWContext& ctx, const Poly& f);
ShiftSeries mul(const PBWContext& ctx, const ShiftSeries& a, const ShiftSeries& b);
bool equal(const ShiftSeries& a, const ShiftSeries& b);

// all exponent vectors over nvars with total degree exactly d
std::vector<Exponents> exponents_of_degree(int nvars, int d);

} // namespace dynrmat
