#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mlslab/geometry/domain.hpp"
#include "mlslab/geometry/kdtree.hpp"

namespace mlslab::geom {

// Immutable point set with a spatial index. Points and index are shared
// between copies. Queries under a periodic domain apply the minimum-image
// rule by repeating the search over the 3^d shifted images of the center;
// results are deduplicated and index-sorted either way.
class PointCloud {
  public:
    PointCloud();
    explicit PointCloud(std::vector<Point> points);

    std::size_t size() const { return points_->size(); }
    bool empty() const { return points_->empty(); }
    int dim() const { return points_->empty() ? 0 : static_cast<int>((*points_)[0].size()); }
    const Point& operator[](std::size_t i) const { return (*points_)[i]; }
    const std::vector<Point>& points() const { return *points_; }

    // All indices i with dist(p_i, center) <= radius, ascending.
    // The metric is Euclidean, or minimum-image when `periodic` is set.
    std::vector<std::size_t> range_query(const Point& center, double radius,
                                         bool periodic = false) const;
    std::size_t range_count(const Point& center, double radius,
                            bool periodic = false) const;

    // Distance from `query` to the nearest point (optionally skipping one
    // index). `upper_bound > 0` primes the search and must dominate the true
    // distance; pass 0 when unknown.
    double nearest_distance(const Point& query, bool periodic = false,
                            std::size_t skip_index = static_cast<std::size_t>(-1),
                            double upper_bound = 0) const;

    const KdTree& tree() const { return *tree_; }

  private:
    std::shared_ptr<const std::vector<Point>> points_;
    std::shared_ptr<const KdTree> tree_;
};

}  // namespace mlslab::geom
