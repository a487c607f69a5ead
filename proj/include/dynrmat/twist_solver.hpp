#pragma once

#include <string>
#include <vector>

#include "dynrmat/dyn_tensor.hpp"

namespace dynrmat {

// One candidate summand of the hbar^k twist correction: coeff(lambda) * w1 (x) w2.
struct AnsatzTerm {
    ScalarExpr coeff;
    Word leg1;
    Word leg2;
};

struct TwistSolution {
    bool feasible = false;
    std::vector<Rational> particular;            // one coefficient per ansatz term
    std::vector<std::vector<Rational>> kernel;   // basis of the homogeneous solutions
    std::string note;                            // irreducible residual when infeasible
};

// F_partial + hbar^k sum_a t_a * ansatz[a]
DynTensor apply_ansatz(const DynTensor& f_partial, const std::vector<AnsatzTerm>& ansatz,
                       const std::vector<Rational>& t, int k);

// Solves for rational ansatz coefficients making the hbar^k coefficients of
// the cocycle and counit residuals vanish identically. The residual is affine
// in the unknowns (quadratic cross terms sit at hbar^{2k} > k), so it is
// assembled from s+1 residual evaluations; the per-monomial equations are
// exact (denominators cleared, no sampling). Requires F_partial to satisfy
// both conditions to order k-1.
TwistSolution solve_twist_order(const DynTensor& f_partial, const std::vector<AnsatzTerm>& ansatz,
                                int k, std::size_t term_budget = 200000);

} // namespace dynrmat
