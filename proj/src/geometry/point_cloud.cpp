#include "mlslab/geometry/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlslab/errors.hpp"

namespace mlslab::geom {

namespace {

// Enumerates the 3^d shift vectors with entries in {-1, 0, 1}; for the
// minimum-image metric on the unit torus, querying each shifted center
// against the raw coordinates is exact because all coordinates lie in [0,1].
void for_each_image(const Point& center, const auto& fn) {
    const int d = static_cast<int>(center.size());
    std::vector<int> shift(d, -1);
    Point c(d);
    while (true) {
        for (int j = 0; j < d; ++j) c[j] = center[j] + shift[j];
        fn(c);
        int j = d - 1;
        while (j >= 0 && ++shift[j] == 2) shift[j--] = -1;
        if (j < 0) break;
    }
}

}  // namespace

PointCloud::PointCloud()
    : points_(std::make_shared<const std::vector<Point>>()),
      tree_(std::make_shared<const KdTree>(*points_)) {}

PointCloud::PointCloud(std::vector<Point> points)
    : points_(std::make_shared<const std::vector<Point>>(std::move(points))),
      tree_(std::make_shared<const KdTree>(*points_)) {}

std::vector<std::size_t> PointCloud::range_query(const Point& center, double radius,
                                                 bool periodic) const {
    if (!periodic) return tree_->range_query(center, radius);
    std::vector<std::size_t> out;
    for_each_image(center, [&](const Point& c) {
        auto part = tree_->range_query(c, radius);
        out.insert(out.end(), part.begin(), part.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t PointCloud::range_count(const Point& center, double radius,
                                    bool periodic) const {
    if (!periodic) return tree_->range_count(center, radius);
    return range_query(center, radius, true).size();
}

double PointCloud::nearest_distance(const Point& query, bool periodic,
                                    std::size_t skip_index, double upper_bound) const {
    double best = std::numeric_limits<double>::infinity();
    if (!periodic) {
        tree_->nearest(query, &best, skip_index, upper_bound);
        return best;
    }
    for_each_image(query, [&](const Point& c) {
        double d = 0.0;
        tree_->nearest(c, &d, skip_index, std::min(best, upper_bound <= 0 ? best : upper_bound));
        best = std::min(best, d);
    });
    return best;
}

}  // namespace mlslab::geom
