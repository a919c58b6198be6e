#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/mmls/frame.hpp"

namespace mlslab::mmls {

// Polynomial map from frame coordinates (R^d) to ambient space (R^D) in the
// scaled monomial basis centered at the frame origin. Row a of
// `coefficients` multiplies basis[a] in every output coordinate, so the
// value at the origin is exactly the constant row.
struct VectorPolynomial {
    std::vector<geom::MultiIndex> basis;  // graded-lex, |alpha| <= degree
    Eigen::MatrixXd coefficients;         // basis.size() x D
    double bandwidth = 0.0;               // monomial scaling

    geom::Point eval(const geom::Point& x) const;  // x in frame coordinates
    geom::Point value_at_origin() const;
};

// Weighted least-squares fit of ambient positions against frame coordinates
// x_i = E^T (r_i - q): one gram matrix, D right-hand sides. Candidates are
// the samples within the proximity radius of the origin (weights act on
// frame coordinates, so without that ambient cutoff a far sheet of the
// manifold could project onto the chart and receive full weight); of those,
// only positive-weight points enter.
// Throws InsufficientDataError (fewer positive weights than basis functions)
// and IllConditionedError (gram numerically rank deficient).
VectorPolynomial local_poly_fit(const LocalFrame& frame, const geom::PointCloud& samples,
                                const MmlsConfig& cfg);

// The projection: value at the frame origin of the local fit at r.
geom::Point mmls_project(const geom::Point& r, const geom::PointCloud& samples,
                         const MmlsConfig& cfg);

// Per-probe outcome of a reconstruction run.
struct ProjectionDiagnostics {
    std::size_t probe_index = 0;
    int iterations = 0;      // frame iterations (0 when the frame search failed)
    double residual = 0.0;   // frame objective (NaN when the frame search failed)
    std::string failure;     // empty on success, else the reason
};

// Projects every probe; failed probes are excluded from the output and
// recorded in `diagnostics` (when non-null) with their failure reason.
// Output order follows probe order. An empty probe set yields an empty
// cloud. Throws ConvergenceError when the failed fraction exceeds
// `max_failure_fraction`.
geom::PointCloud reconstruct_manifold(const geom::PointCloud& samples,
                                      const geom::PointCloud& probes, const MmlsConfig& cfg,
                                      std::vector<ProjectionDiagnostics>* diagnostics = nullptr,
                                      double max_failure_fraction = 0.01);

}  // namespace mlslab::mmls
