#include "mlslab/geometry/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mlslab/errors.hpp"

namespace mlslab::geom {

namespace {

double dist2(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double t = a[j] - b[j];
        s += t * t;
    }
    return s;
}

}  // namespace

KdTree::KdTree(const std::vector<Point>& points) : points_(&points) {
    if (points.empty()) return;
    dim_ = static_cast<int>(points[0].size());
    for (const Point& p : points)
        if (static_cast<int>(p.size()) != dim_)
            throw ArgumentError("kd-tree points must share one dimension");
    index_.resize(points.size());
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    nodes_.reserve(2 * points.size() / kLeafSize + 2);
    root_ = build(0, points.size());
}

int KdTree::build(std::size_t begin, std::size_t end) {
    Node n;
    n.begin = begin;
    n.end = end;
    n.box_lo.assign(dim_, std::numeric_limits<double>::infinity());
    n.box_hi.assign(dim_, -std::numeric_limits<double>::infinity());
    for (std::size_t k = begin; k < end; ++k) {
        const Point& p = (*points_)[index_[k]];
        for (int j = 0; j < dim_; ++j) {
            n.box_lo[j] = std::min(n.box_lo[j], p[j]);
            n.box_hi[j] = std::max(n.box_hi[j], p[j]);
        }
    }
    if (end - begin <= kLeafSize) {
        // leaf keeps its slice index-sorted so query output order is stable
        std::sort(index_.begin() + begin, index_.begin() + end);
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }
    // split the widest axis at the median; ties broken by point index
    int axis = 0;
    double widest = -1.0;
    for (int j = 0; j < dim_; ++j) {
        double w = n.box_hi[j] - n.box_lo[j];
        if (w > widest) {
            widest = w;
            axis = j;
        }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](std::size_t a, std::size_t b) {
                         double ca = (*points_)[a][axis], cb = (*points_)[b][axis];
                         return ca < cb || (ca == cb && a < b);
                     });
    n.axis = axis;
    n.split = (*points_)[index_[mid]][axis];
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

double KdTree::box_dist2(const Node& n, const Point& q) const {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) {
        double t = 0.0;
        if (q[j] < n.box_lo[j]) t = n.box_lo[j] - q[j];
        else if (q[j] > n.box_hi[j]) t = q[j] - n.box_hi[j];
        s += t * t;
    }
    return s;
}

void KdTree::range_rec(int node, const Point& center, double r2,
                       std::vector<std::size_t>* out, std::size_t* count) const {
    const Node& n = nodes_[node];
    if (box_dist2(n, center) > r2) return;
    if (n.axis < 0) {
        for (std::size_t k = n.begin; k < n.end; ++k) {
            std::size_t i = index_[k];
            if (dist2((*points_)[i], center) <= r2) {
                if (out) out->push_back(i);
                if (count) ++*count;
            }
        }
        return;
    }
    range_rec(n.left, center, r2, out, count);
    range_rec(n.right, center, r2, out, count);
}

std::vector<std::size_t> KdTree::range_query(const Point& center, double radius) const {
    if (static_cast<int>(center.size()) != dim_ && points_ && !points_->empty())
        throw ArgumentError("range_query center dimension mismatch");
    if (radius < 0.0) throw ArgumentError("range_query radius must be non-negative");
    std::vector<std::size_t> out;
    if (root_ >= 0) range_rec(root_, center, radius * radius, &out, nullptr);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t KdTree::range_count(const Point& center, double radius) const {
    if (static_cast<int>(center.size()) != dim_ && points_ && !points_->empty())
        throw ArgumentError("range_query center dimension mismatch");
    if (radius < 0.0) throw ArgumentError("range_query radius must be non-negative");
    std::size_t c = 0;
    if (root_ >= 0) range_rec(root_, center, radius * radius, nullptr, &c);
    return c;
}

void KdTree::nearest_rec(int node, const Point& query, std::size_t skip,
                         double& best_d2, std::size_t& best_i) const {
    const Node& n = nodes_[node];
    if (box_dist2(n, query) > best_d2) return;
    if (n.axis < 0) {
        for (std::size_t k = n.begin; k < n.end; ++k) {
            std::size_t i = index_[k];
            if (i == skip) continue;
            double d2 = dist2((*points_)[i], query);
            if (d2 < best_d2 || (d2 == best_d2 && i < best_i)) {
                best_d2 = d2;
                best_i = i;
            }
        }
        return;
    }
    // descend the nearer child first for tighter pruning
    const double q = query[n.axis];
    int first = n.left, second = n.right;
    if (q > n.split) std::swap(first, second);
    nearest_rec(first, query, skip, best_d2, best_i);
    nearest_rec(second, query, skip, best_d2, best_i);
}

std::size_t KdTree::nearest(const Point& query, double* dist_out,
                            std::size_t skip, double upper_bound) const {
    if (root_ < 0 || (skip < size() && size() == 1))
        throw InsufficientDataError("nearest: no eligible points", 0);
    if (static_cast<int>(query.size()) != dim_)
        throw ArgumentError("nearest query dimension mismatch");
    double best_d2 = upper_bound * upper_bound;
    if (!(best_d2 > 0.0) || !std::isfinite(best_d2))
        best_d2 = std::numeric_limits<double>::infinity();
    // inclusive bound: nudge up so an exact upper bound still admits its point
    else best_d2 = std::nextafter(best_d2, std::numeric_limits<double>::infinity());
    std::size_t best_i = size();
    nearest_rec(root_, query, skip, best_d2, best_i);
    if (best_i == size()) {
        // primed bound excluded everything; rerun unbounded
        best_d2 = std::numeric_limits<double>::infinity();
        nearest_rec(root_, query, skip, best_d2, best_i);
    }
    if (dist_out) *dist_out = std::sqrt(best_d2);
    return best_i;
}

std::size_t KdTree::nearest(const Point& query, double* dist_out) const {
    return nearest(query, dist_out, size(), 0.0);
}

}  // namespace mlslab::geom
