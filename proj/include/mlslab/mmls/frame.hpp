#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/mls/bandwidth.hpp"
#include "mlslab/mls/weight_function.hpp"

namespace mlslab::mmls {

// Settings for projecting ambient points onto the d-dimensional manifold an
// unstructured cloud in R^D was sampled from. The intrinsic dimension is an
// input, never estimated. All radii derive from the bandwidth h resolved
// against the cloud size: the frame and fit weights act at scale h, and the
// proximity radius mu = mu_factor * h bounds how far the local origin may
// drift from the query.
struct MmlsConfig {
    int intrinsic_dim = 1;
    // 0 adopts the cloud's dimension; a positive value must match it.
    int ambient_dim = 0;
    int degree = 2;  // total degree of the local polynomial map
    // Weight for the moving-frame objective (ambient distances to the origin).
    mls::WeightFunction frame_weight = mls::WeightFunction::smooth_bump();
    // Weight for the polynomial fit (distances in frame coordinates).
    mls::WeightFunction fit_weight = mls::WeightFunction::smooth_bump();
    // Manifold neighborhoods need more points than function fits at the same
    // n; the larger default rate constant keeps the minimum neighbor count
    // across a sample well clear of the basis size.
    mls::Bandwidth bandwidth = mls::Bandwidth::rate(5.0);
    double mu_factor = 3.0;  // proximity radius mu = mu_factor * h; >= 1
    double frame_tolerance = 1e-12;  // origin movement declaring convergence
    int max_frame_iterations = 64;
    // Fit grams with lambda_min below this fraction of max(1, lambda_max)
    // are rejected as rank deficient.
    double epsilon_lambda = 1e-12;

    double resolved_bandwidth(std::size_t n) const;
    double resolved_mu(std::size_t n) const;
    std::size_t basis_size() const;  // dim of polynomials of total degree <= degree on R^d
};

// Local coordinate chart at a query r: an origin q near the manifold and an
// orthonormal basis E (D x d columns) of the moving tangent estimate.
// Every returned frame satisfies, by construction of the origin update:
//   - E^T E = identity to 1e-12,
//   - r - q is orthogonal to the span of E,
//   - |q - r| <= mu,
//   - at least basis_size() samples lie within the fit weight's support of q.
struct LocalFrame {
    geom::Point origin;     // q
    Eigen::MatrixXd basis;  // E, D x d, orthonormal columns
    double residual = 0.0;  // weighted normal-distance objective at (q, E)
    int iterations = 0;
};

// Alternating minimization of J(q, E) = sum_i theta(r_i - q) |normal part of
// (r_i - q)|^2 over frames with r - q perpendicular to the span of E.
// Starting from the nearest sample, each pass recomputes E as the top-d
// eigenvectors of the weighted second moment about q, then moves q to the
// weighted mean shifted along the span so the perpendicularity constraint
// holds exactly. The objective never increases across accepted iterates: a
// pass that would raise it (the weights moved) keeps the previous frame and
// stops. Eigenvector signs are fixed (first significant component positive)
// so results are reproducible.
// Throws: FeasibilityError when no sample is reachable (nearest sample
// farther than mu plus the weight support, or all weights vanish);
// ConvergenceError when the iteration budget runs out or the converged
// origin sits outside the proximity ball; InsufficientDataError when the
// final neighborhood cannot support the polynomial fit.
LocalFrame find_local_frame(const geom::Point& r, const geom::PointCloud& samples,
                            const MmlsConfig& cfg);

// Checks the config against a sample cloud (dimensions, radii, budgets);
// throws ArgumentError on any violation.
void validate_config(const MmlsConfig& cfg, const geom::PointCloud& samples);

}  // namespace mlslab::mmls
