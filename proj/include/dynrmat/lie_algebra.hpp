#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dynrmat/rational.hpp"
#include "dynrmat/scalar_expr.hpp"

namespace dynrmat {

// Sparse list of (basis index, coefficient) pairs; the value of one bracket.
using BracketTerms = std::vector<std::pair<int, Rational>>;

// Finite-dimensional Lie algebra over Q given by structure constants
// c[i][j][k], meaning [e_i, e_j] = sum_k c[i][j][k] e_k. Entries are stored
// raw, so antisymmetry violations are representable and detectable.
class LieAlgebra {
public:
    LieAlgebra(int dim, std::vector<std::string> labels);

    int dim() const { return dim_; }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const; // -1 if absent

    // sets c[i][j] = terms and c[j][i] = -terms
    void set_bracket(int i, int j, const BracketTerms& terms);
    // sets c[i][j] only (for perturbation experiments)
    void set_raw(int i, int j, BracketTerms terms);

    const BracketTerms& bracket_basis(int i, int j) const; // empty list if zero
    Rational structure_constant(int i, int j, int k) const;
    const std::map<std::pair<int, int>, BracketTerms>& raw_entries() const { return c_; }

    struct AntisymmetryViolation {
        int i, j, k;
        Rational defect; // c[i][j][k] + c[j][i][k]
    };
    struct JacobiViolation {
        int i, j, k, p;
        Rational defect;
    };
    struct ValidationReport {
        std::vector<AntisymmetryViolation> antisymmetry;
        std::vector<JacobiViolation> jacobi;
        bool ok() const { return antisymmetry.empty() && jacobi.empty(); }
    };
    // Lists every violated antisymmetry/Jacobi instance over the raw constants.
    ValidationReport validate() const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.dim_ == b.dim_ && a.labels_ == b.labels_ && a.c_ == b.c_;
    }

private:
    int dim_;
    std::vector<std::string> labels_;
    std::map<std::pair<int, int>, BracketTerms> c_;
    static const BracketTerms empty_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

// Dense coefficient vector over the algebra basis.
using VectorExpr = std::vector<ScalarExpr>;

VectorExpr bracket(const LieAlgebra& alg, const VectorExpr& x, const VectorExpr& y);

// Reductive decomposition g = h (+) m; `base` holds the indices of h
// (ascending), `complement` the indices of m (ascending).
struct Decomposition {
    LieAlgebraPtr alg;
    std::vector<int> base;
    std::vector<int> complement;

    int base_dim() const { return static_cast<int>(base.size()); }
    int complement_dim() const { return static_cast<int>(complement.size()); }

    struct Violation {
        int i, j;          // basis indices of g
        int k;             // offending component
        std::string kind;  // "base-not-closed" or "complement-not-stable"
    };
    struct Report {
        std::vector<Violation> violations;
        bool ok() const { return violations.empty(); }
    };
    // Checks H u M partitions the basis, [h,h] c h and [h,m] c m.
    Report check_reductive() const;

    // The base subalgebra as a standalone algebra in local indices 0..l-1
    // (assumes check_reductive passed; brackets leaving h are rejected).
    LieAlgebra base_algebra() const;
};

struct BuiltinAlgebra {
    LieAlgebraPtr alg;
    Decomposition dec;
};

// sl2, sl3, heisenberg(m,n), abelian(n) with their canonical decompositions.
// Names: "sl2" | "sl3" | "heisenberg(m,n)" | "abelian(n)". Throws UnknownName.
BuiltinAlgebra builtin(const std::string& name);

// sl3 with the larger reductive base l = h (+) g_alpha (+) g_{-alpha};
// `root` in {1, 2, 3} selects alpha1, alpha2 or alpha1+alpha2.
BuiltinAlgebra sl3_reductive_base(int root);

} // namespace dynrmat
