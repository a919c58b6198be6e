#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/mls/bandwidth.hpp"
#include "mlslab/mls/weight_function.hpp"

namespace mlslab::mls {

enum class Normalization { Raw, PerCount };

// A moving least-squares approximant over a fixed cloud and sample values.
// Immutable after construction; every evaluation operation is pure, so
// concurrent queries are safe. Neighbor sums always run in ascending index
// order, making every result bit-deterministic.
struct MlsModel {
    geom::PointCloud cloud;
    std::vector<double> values;
    int degree = 2;  // total degree of the local polynomial space
    WeightFunction weight = WeightFunction::smooth_bump();
    Bandwidth bandwidth = Bandwidth::rate();
    Normalization normalization = Normalization::PerCount;
    // Fits whose gram smallest eigenvalue falls below epsilon_lambda are
    // rejected as degenerate, unless ridge > 0, in which case ridge * I is
    // added as a fallback and the fit is marked.
    double epsilon_lambda = 1e-10;
    double ridge = 0.0;

    double resolved_bandwidth() const;
    double support_radius() const;  // support_scale * resolved bandwidth
    std::size_t basis_size() const;
};

// Everything produced by one local weighted fit at a query point.
struct LocalFit {
    geom::Point query;
    std::vector<std::size_t> neighbor_indices;  // ascending
    Eigen::MatrixXd gram;                       // exactly symmetric as stored
    Eigen::VectorXd eta;                        // gram (+ridge) * eta = e_0
    double lambda_min = 0.0;                    // of gram, before any ridge
    bool ridged = false;
    std::vector<double> shape_values;  // a_i*, aligned with neighbor_indices
};

// Constant-coefficient linear differential operator sum q_alpha d^alpha.
struct DifferentialOperator {
    std::vector<std::pair<geom::MultiIndex, double>> terms;

    static DifferentialOperator identity(int d);
    static DifferentialOperator partial(const geom::MultiIndex& alpha, double coeff = 1.0);
    static DifferentialOperator laplacian(int d);

    // max |alpha| over nonzero coefficients; at least one must be nonzero.
    int order() const;
};

// Weighted moment matrix of the scaled monomial basis centered at `query`,
// over the neighbors within the support radius (returned alongside).
std::pair<Eigen::MatrixXd, std::vector<std::size_t>> assemble_gram(
    const MlsModel& model, const geom::Point& query);

LocalFit local_fit(const MlsModel& model, const geom::Point& query);

// s(query) = sum_i a_i*(query) values[i].
double mls_eval(const MlsModel& model, const geom::Point& query);

// Analytic d^alpha a_i*(query) per neighbor, aligned with the LocalFit
// neighbor order. Derivatives of the weight enter by Taylor expansion and
// derivatives of eta by repeatedly differentiating gram * eta = p.
std::vector<double> shape_derivatives(const MlsModel& model, const geom::Point& query,
                                      const geom::MultiIndex& alpha);

// d^alpha s(query), computed from the analytic shape derivatives.
double mls_eval_derivative(const MlsModel& model, const geom::Point& query,
                           const geom::MultiIndex& alpha);

// (Q s)(query) = sum_alpha q_alpha d^alpha s(query); one fit is shared
// across all terms.
double mls_eval_operator(const MlsModel& model, const geom::Point& query,
                         const DifferentialOperator& op);

// Smallest eigenvalue after exact symmetrization (M + M^T)/2.
double lambda_min(const Eigen::MatrixXd& m);

}  // namespace mlslab::mls
