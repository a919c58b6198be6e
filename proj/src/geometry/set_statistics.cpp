#include "mlslab/geometry/set_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlslab/errors.hpp"

namespace mlslab::geom {

double fill_distance(const PointCloud& cloud, const Domain& domain, int resolution) {
    if (cloud.empty()) throw InsufficientDataError("fill_distance: empty cloud", 0);
    if (cloud.dim() != domain.dim())
        throw ArgumentError("fill_distance: cloud/domain dimension mismatch");
    const bool periodic = domain.periodic();
    const auto grid = domain.candidate_grid(resolution);
    // Walking the grid in generation order moves the query by one step at a
    // time, so the previous distance plus that step is a valid prime for the
    // next nearest-neighbor search (triangle inequality).
    double h = 0.0;
    double prev = 0.0;
    Point prev_g;
    for (const Point& g : grid) {
        double bound = 0.0;
        if (!prev_g.empty()) {
            double hop2 = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) {
                double t = g[j] - prev_g[j];
                hop2 += t * t;
            }
            bound = prev + std::sqrt(hop2);
        }
        double dmin = cloud.nearest_distance(g, periodic, static_cast<std::size_t>(-1), bound);
        h = std::max(h, dmin);
        prev = dmin;
        prev_g = g;
    }
    return h;
}

double separation(const PointCloud& cloud, bool periodic) {
    if (cloud.size() < 2) throw InsufficientDataError("separation: need >= 2 points", cloud.size());
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double d = cloud.nearest_distance(cloud[i], periodic, i,
                                          std::isfinite(sep) ? sep : 0.0);
        sep = std::min(sep, d);
        if (sep == 0.0) break;  // coincident points, cannot get smaller
    }
    return sep;
}

double separation(const PointCloud& cloud, const Domain& domain) {
    return separation(cloud, domain.periodic());
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty())
        throw InsufficientDataError("hausdorff_distance: empty cloud", 0);
    if (a.dim() != b.dim())
        throw ArgumentError("hausdorff_distance: dimension mismatch");
    double h = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        h = std::max(h, b.nearest_distance(a[i]));
    for (std::size_t i = 0; i < b.size(); ++i)
        h = std::max(h, a.nearest_distance(b[i]));
    return h;
}

}  // namespace mlslab::geom
