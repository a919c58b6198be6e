#pragma once

#include <cstdint>
#include <vector>

#include "mlslab/geometry/multi_index.hpp"

namespace mlslab::mls {

// Index structure shared by all truncated Taylor expansions in d variables
// of total order <= `order`: the graded-lex multi-index list, a position
// lookup, and the pair->target table driving truncated multiplication.
// Layouts are built once per (d, order) and cached for the process lifetime.
class JetLayout {
  public:
    static const JetLayout& get(int d, int order);

    int dim() const { return d_; }
    int order() const { return order_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<geom::MultiIndex>& indices() const { return indices_; }
    std::size_t position(const geom::MultiIndex& alpha) const;

    struct ProductTerm {
        std::uint32_t a, b, target;
    };
    const std::vector<ProductTerm>& product_terms() const { return products_; }

  private:
    JetLayout(int d, int order);
    int d_;
    int order_;
    std::vector<geom::MultiIndex> indices_;
    std::vector<ProductTerm> products_;
};

// Truncated Taylor expansion around a base point: coeffs()[k] multiplies
// (x - base)^{alpha_k} with alpha_k = layout.indices()[k]. Coefficients are
// plain monomial coefficients; derivative() applies the alpha! factor.
class TaylorJet {
  public:
    explicit TaylorJet(const JetLayout& layout)
        : layout_(&layout), coeffs_(layout.size(), 0.0) {}

    const JetLayout& layout() const { return *layout_; }
    double& operator[](std::size_t k) { return coeffs_[k]; }
    double operator[](std::size_t k) const { return coeffs_[k]; }
    double constant_term() const { return coeffs_[0]; }

    TaylorJet& operator+=(const TaylorJet& o);
    TaylorJet& operator-=(const TaylorJet& o);
    TaylorJet& scale(double c);
    TaylorJet times(const TaylorJet& o) const;

    // g(f) for analytic g, where *this is the jet of f: the caller passes
    // the series coefficients c_k of g around f's constant term, so that
    // g(f) = sum_k c_k (f - f0)^k. Evaluated by Horner in the nilpotent
    // part, which is exact at this truncation order.
    TaylorJet compose_series(const std::vector<double>& series) const;

    // gamma! * coefficient of gamma: the partial derivative at the base.
    double derivative(const geom::MultiIndex& gamma) const;

  private:
    const JetLayout* layout_;
    std::vector<double> coeffs_;
};

// Series coefficients (c_0..c_order) of standard outer functions about f0.
std::vector<double> exp_series(double f0, int order);
// 1/(f0 + x); requires f0 != 0.
std::vector<double> recip_series(double f0, int order);
// sqrt(f0 + x); requires f0 > 0.
std::vector<double> sqrt_series(double f0, int order);

}  // namespace mlslab::mls
