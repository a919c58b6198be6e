#pragma once

#include <vector>

#include "mlslab/geometry/domain.hpp"
#include "mlslab/sampling/rng.hpp"

namespace mlslab::sampling {

// Closed reference manifold embedded in R^D with exact geometry: uniform
// (area-measure) sampling, membership, and point-to-manifold distance.
//  - circle: unit circle in R^2 (intrinsic dim 1)
//  - sphere: unit sphere in R^3 (intrinsic dim 2)
//  - graph:  {(u, phi(u)) : u in [0,1]^d} in R^D, phi a fixed smooth
//    1-periodic height map, so phi and all derivatives match across the
//    parameter seam. Distances for graphs are found by a dense parameter
//    scan plus descent refinement; the scan margin uses a global Lipschitz
//    bound so the reported distance is within 1e-10 of the true minimum.
//  - flat:   {(u, 0) : u in [0,1]^d} in R^D, the zero-curvature patch;
//    distances are exact (clamp to the cube, then the normal offset).
class ReferenceManifold {
  public:
    enum class Kind { Circle, Sphere, Graph, Flat };

    static ReferenceManifold circle();
    static ReferenceManifold sphere();
    static ReferenceManifold graph(int d, int D);
    static ReferenceManifold flat(int d, int D);

    Kind kind() const { return kind_; }
    int intrinsic_dim() const { return d_; }
    int ambient_dim() const { return D_; }

    // Parameter -> ambient embedding. Circle/sphere take angles (u scaled to
    // [0,1)); graphs take the parameter point itself.
    geom::Point embed(const geom::Point& u) const;

    // Euclidean distance from an ambient point to the manifold.
    double distance(const geom::Point& p) const;
    bool on_manifold(const geom::Point& p, double tol = 1e-12) const;

    // One uniform sample; the drawing parameter is appended to *param_out
    // when non-null.
    geom::Point sample_point(Rng& rng, geom::Point* param_out = nullptr) const;

    // Deterministic dense point set on the manifold (`resolution` nodes per
    // intrinsic axis), used to measure sample fill distances against M.
    std::vector<geom::Point> reference_grid(int resolution) const;

    // Height map of the graph/flat variants (empty for circle/sphere).
    std::vector<double> height(const geom::Point& u) const;

  private:
    ReferenceManifold(Kind k, int d, int D) : kind_(k), d_(d), D_(D) {}
    double graph_area_element(const geom::Point& u) const;
    void graph_height_jet(const geom::Point& u, std::vector<double>& val,
                          std::vector<std::vector<double>>& grad) const;

    Kind kind_;
    int d_;
    int D_;
    double area_envelope_ = 0.0;  // graphs: sup of the area element, cached
};

// n i.i.d. uniform samples (bit-identical for identical (manifold, n, seed)).
// When params is non-null it receives the n drawing parameters.
std::vector<geom::Point> sample_manifold_points(const ReferenceManifold& m, std::size_t n,
                                                std::uint64_t seed,
                                                std::vector<geom::Point>* params = nullptr);

}  // namespace mlslab::sampling
