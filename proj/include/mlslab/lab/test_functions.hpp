#pragma once

#include <string>
#include <vector>

#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point.hpp"
#include "mlslab/mls/model.hpp"

namespace mlslab::lab {

// Named smooth target functions with closed-form derivatives of every order,
// used as ground truth in error-rate experiments:
//   sin2pi-x0  sin(2 pi x_0)
//   exp-mix    exp(c . x) with c cycling through {1, -0.5, 0.25}
//   quad-sum   sum_j x_j^2
// plus arbitrary polynomials given by multi-index coefficients.
class TestFunction {
  public:
    static TestFunction from_name(const std::string& name, int dim);
    static TestFunction polynomial(std::vector<geom::MultiIndex> alphas,
                                   std::vector<double> coeffs);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }

    double value(const geom::Point& x) const;
    double derivative(const geom::Point& x, const geom::MultiIndex& alpha) const;
    // Q f(x) for a constant-coefficient differential operator.
    double apply(const geom::Point& x, const mls::DifferentialOperator& q) const;

  private:
    enum class Kind { Sin2PiX0, ExpMix, QuadSum, Polynomial };
    TestFunction(Kind kind, int dim, std::string name)
        : kind_(kind), dim_(dim), name_(std::move(name)) {}

    Kind kind_;
    int dim_;
    std::string name_;
    std::vector<geom::MultiIndex> alphas_;  // polynomial only
    std::vector<double> coeffs_;
};

}  // namespace mlslab::lab
