#pragma once

#include "mlslab/geometry/domain.hpp"
#include "mlslab/geometry/point_cloud.hpp"

namespace mlslab::geom {

// Fill distance sup_{x in Omega} min_i |x - p_i|, estimated on the domain's
// deterministic candidate grid with `resolution` nodes per axis. The estimate
// never exceeds the true value and undershoots by at most the grid covering
// radius. Requires a non-empty cloud and resolution >= 2.
double fill_distance(const PointCloud& cloud, const Domain& domain, int resolution);

// Separation min_{i<j} |p_i - p_j|. Zero when points coincide.
// Requires at least two points. Runs in o(n^2) via the spatial index.
double separation(const PointCloud& cloud, const Domain& domain);
double separation(const PointCloud& cloud, bool periodic = false);

// Symmetric Hausdorff distance between two non-empty clouds (Euclidean).
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

}  // namespace mlslab::geom
