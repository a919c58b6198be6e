#pragma once

#include <cstddef>
#include <vector>

#include "mlslab/geometry/domain.hpp"

namespace mlslab::geom {

// Static kd-tree over a fixed point set. Splits at the median of the widest
// axis; subtrees of fewer than kLeafSize points are scanned linearly. All
// comparisons break ties by point index, so build and queries are fully
// deterministic for a given input order.
class KdTree {
  public:
    static constexpr std::size_t kLeafSize = 32;

    KdTree() = default;
    explicit KdTree(const std::vector<Point>& points);

    std::size_t size() const { return index_.size(); }

    // Indices of all points with |p_i - center| <= radius, ascending.
    std::vector<std::size_t> range_query(const Point& center, double radius) const;

    // Count of points with |p_i - center| <= radius.
    std::size_t range_count(const Point& center, double radius) const;

    // Nearest neighbor. `skip` excludes one index (for self queries);
    // pass size() to disable. `upper_bound` primes the search radius: it must
    // be a valid upper bound on the true nearest distance or +inf.
    // Returns the index; ties resolve to the lowest index.
    std::size_t nearest(const Point& query, double* dist_out,
                        std::size_t skip, double upper_bound) const;
    std::size_t nearest(const Point& query, double* dist_out) const;

  private:
    struct Node {
        int axis = -1;          // -1 marks a leaf
        double split = 0.0;
        std::size_t begin = 0, end = 0;  // leaf range into index_
        int left = -1, right = -1;
        Point box_lo, box_hi;
    };

    int build(std::size_t begin, std::size_t end);
    void range_rec(int node, const Point& center, double r2,
                   std::vector<std::size_t>* out, std::size_t* count) const;
    void nearest_rec(int node, const Point& query, std::size_t skip,
                     double& best_d2, std::size_t& best_i) const;
    double box_dist2(const Node& n, const Point& q) const;

    const std::vector<Point>* points_ = nullptr;
    std::vector<std::size_t> index_;
    std::vector<Node> nodes_;
    int root_ = -1;
    int dim_ = 0;
};

}  // namespace mlslab::geom
