#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynrmat/lie_algebra.hpp"
#include "dynrmat/multivector.hpp"
#include "dynrmat/poly.hpp"

namespace dynrmat {

// f_ij(lambda) = <lambda, [h_i, h_j]>, the linear functions carrying the
// Lie-Poisson structure of the base; f_ij = -f_ji.
struct BaseStructure {
    int l = 0;
    std::vector<std::vector<ScalarExpr>> f; // l x l

    const ScalarExpr& operator()(int i, int j) const { return f[i][j]; }
};

BaseStructure base_structure(const Decomposition& dec);

// A dynamical r-matrix r: h* -> Lambda^2 g, plus the pairing matrix
// a_ij(lambda) = <lambda, [e_i, e_j]_h> and its inverse c = adj(a)/det(a)
// when produced by the constructor.
struct DynamicalR {
    Decomposition dec;
    Multivector r;

    std::optional<std::vector<std::vector<Poly>>> a;   // over the m-basis
    std::optional<std::vector<std::vector<ScalarExpr>>> c;
    std::optional<Poly> det;                           // singular-locus certificate
};

// Constructs r from a fat reductive decomposition. Computes the
// skew pairing a(lambda) on m, inverts it symbolically through the adjugate,
// and returns r = 1/2 sum_ij c_ij e_i ^ e_j. Throws DegenerateEverywhere when
// det a is identically zero. Feasible for |m| <= 8 (adjugate expansion).
DynamicalR construct_r(const Decomposition& dec);

// sum_i h_i ^ dr/dlambda^i - 1/2 [r, r]; identically zero iff r satisfies the
// classical dynamical Yang-Baxter equation in its triangular form.
Multivector cdybe_residual(const DynamicalR& r);

// ad_{h_i} r + sum_j f_ij(lambda) dr/dlambda^j, the infinitesimal form of
// H-equivariance in base direction i (0-based local index).
Multivector equivariance_residual(const DynamicalR& r, const BaseStructure& base, int i);

// Closed forms printed in the source examples:
//   simple_cartan: r = -sum_{alpha>0} 1/(lambda,alpha) e_alpha ^ e_{-alpha}
//     over sl2/sl3 with Cartan base, (lambda,alpha) = <lambda,[e_a,e_{-a}]_h>;
//   heisenberg(m,n): r = -(1/x) sum_{i<=m} p_i ^ q_i;
//   sl3 with reductive base l = h (+) g_alpha (+) g_{-alpha}: the same formula
//     over the reduced positive roots, valid on lambda in h* c l*.
DynamicalR closed_form_simple_cartan(const std::string& alg_name); // "sl2" | "sl3"
DynamicalR closed_form_heisenberg(int m, int n);
DynamicalR closed_form_sl3_restricted(int root);

// Point-evaluation mode for decompositions past the symbolic-inverse size
// (|m| > 8): the pairing matrix and its inverse at a single point of h*,
// computed by exact Gaussian elimination. Pairs with the -c (da) c derivative
// identity for derivative values.
struct PointR {
    std::vector<std::vector<Rational>> a;
    std::vector<std::vector<Rational>> c; // a^{-1}
};
PointR evaluate_r_at(const Decomposition& dec, const std::vector<Rational>& point);

struct FatnessResult {
    Rational det_value;
    bool fat = false;
    Poly det_symbolic;
};

// Evaluates det a(lambda) at a point of h*; nonzero means the decomposition is
// fat there. The symbolic determinant doubles as the singular-locus
// certificate.
FatnessResult fatness(const Decomposition& dec, const std::vector<Rational>& point);

// Affine reparameterization lambda -> lambda - mu of the dynamical parameter
// (removes the singularity of the constructed r at 0).
DynamicalR shift_parameter(const DynamicalR& r, const std::vector<Rational>& mu);

// Non-degeneracy in the sense of the construction: invertibility of a(lambda).
// Only decided for constructor-built r (throws otherwise: no manifold-level
// criterion is implemented for general r).
bool nondegenerate_at(const DynamicalR& r, const std::vector<Rational>& point);

} // namespace dynrmat
