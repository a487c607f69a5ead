#include "dynrmat/lie_algebra.hpp"

#include <algorithm>
#include <set>

#include "dynrmat/errors.hpp"

namespace dynrmat {

const BracketTerms LieAlgebra::empty_{};

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> labels) : dim_(dim), labels_(std::move(labels)) {
    if (dim < 0) throw Error("negative dimension");
    if (static_cast<int>(labels_.size()) != dim) throw Error("label count does not match dimension");
}

int LieAlgebra::index_of(const std::string& label) const {
    for (int i = 0; i < dim_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

namespace {

BracketTerms normalized(BracketTerms terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    BracketTerms out;
    for (auto& [k, c] : terms) {
        if (!out.empty() && out.back().first == k) out.back().second += c;
        else out.emplace_back(k, c);
    }
    std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
    return out;
}

} // namespace

void LieAlgebra::set_bracket(int i, int j, const BracketTerms& terms) {
    BracketTerms neg;
    neg.reserve(terms.size());
    for (const auto& [k, c] : terms) neg.emplace_back(k, -c);
    set_raw(i, j, terms);
    set_raw(j, i, std::move(neg));
}

void LieAlgebra::set_raw(int i, int j, BracketTerms terms) {
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_) throw Error("basis index out of range");
    for (const auto& [k, c] : terms)
        if (k < 0 || k >= dim_) throw Error("bracket component index out of range");
    terms = normalized(std::move(terms));
    if (terms.empty()) c_.erase({i, j});
    else c_[{i, j}] = std::move(terms);
}

const BracketTerms& LieAlgebra::bracket_basis(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? empty_ : it->second;
}

Rational LieAlgebra::structure_constant(int i, int j, int k) const {
    for (const auto& [idx, c] : bracket_basis(i, j))
        if (idx == k) return c;
    return Rational(0);
}

LieAlgebra::ValidationReport LieAlgebra::validate() const {
    ValidationReport rep;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            for (int k = 0; k < dim_; ++k) {
                Rational d = structure_constant(i, j, k) + structure_constant(j, i, k);
                if (i == j) d = structure_constant(i, i, k);
                if (!d.is_zero()) rep.antisymmetry.push_back({i, j, k, d});
            }
        }
    }
    // Jacobi over raw constants:
    //   sum_m c[i][j][m] c[m][k][p] + c[j][k][m] c[m][i][p] + c[k][i][m] c[m][j][p] = 0
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            for (int k = j + 1; k < dim_; ++k) {
                std::vector<Rational> defect(dim_, Rational(0));
                auto accumulate = [&](int a, int b, int c) {
                    for (const auto& [m, cab] : bracket_basis(a, b))
                        for (const auto& [p, cmc] : bracket_basis(m, c)) defect[p] += cab * cmc;
                };
                accumulate(i, j, k);
                accumulate(j, k, i);
                accumulate(k, i, j);
                for (int p = 0; p < dim_; ++p)
                    if (!defect[p].is_zero()) rep.jacobi.push_back({i, j, k, p, defect[p]});
            }
        }
    }
    return rep;
}

VectorExpr bracket(const LieAlgebra& alg, const VectorExpr& x, const VectorExpr& y) {
    if (static_cast<int>(x.size()) != alg.dim() || static_cast<int>(y.size()) != alg.dim())
        throw Error("vector length does not match algebra dimension");
    VectorExpr out(alg.dim(), ScalarExpr(0));
    for (int i = 0; i < alg.dim(); ++i) {
        if (x[i].is_const_zero()) continue;
        for (int j = 0; j < alg.dim(); ++j) {
            if (y[j].is_const_zero()) continue;
            for (const auto& [k, c] : alg.bracket_basis(i, j))
                out[k] += x[i] * y[j] * ScalarExpr::constant(c);
        }
    }
    return out;
}

Decomposition::Report Decomposition::check_reductive() const {
    Report rep;
    std::set<int> in_base(base.begin(), base.end());
    std::set<int> in_comp(complement.begin(), complement.end());
    if (static_cast<int>(in_base.size() + in_comp.size()) != alg->dim())
        throw Error("base and complement do not partition the basis");
    for (int b : base)
        if (in_comp.count(b)) throw Error("base and complement overlap");

    for (int i : base) {
        for (int j : base) {
            for (const auto& [k, c] : alg->bracket_basis(i, j))
                if (in_comp.count(k)) rep.violations.push_back({i, j, k, "base-not-closed"});
        }
        for (int j : complement) {
            for (const auto& [k, c] : alg->bracket_basis(i, j))
                if (in_base.count(k)) rep.violations.push_back({i, j, k, "complement-not-stable"});
        }
    }
    return rep;
}

LieAlgebra Decomposition::base_algebra() const {
    int l = base_dim();
    std::vector<std::string> labels;
    labels.reserve(l);
    for (int b : base) labels.push_back(alg->label(b));
    LieAlgebra h(l, std::move(labels));
    std::vector<int> local(alg->dim(), -1);
    for (int a = 0; a < l; ++a) local[base[a]] = a;
    for (int a = 0; a < l; ++a) {
        for (int b = 0; b < l; ++b) {
            BracketTerms terms;
            for (const auto& [k, c] : alg->bracket_basis(base[a], base[b])) {
                if (local[k] < 0) throw Error("base subalgebra is not closed under the bracket");
                terms.emplace_back(local[k], c);
            }
            if (!terms.empty()) h.set_raw(a, b, std::move(terms));
        }
    }
    return h;
}

} // namespace dynrmat
