#pragma once

#include <vector>

#include "mlslab/geometry/point.hpp"

namespace mlslab::geom {

enum class DomainShape { UnitCube, Ball, PeriodicCube };

// Bounded sample domain in R^d. Three shapes:
//  - unit cube [0,1]^d,
//  - origin-centered ball of given radius,
//  - periodic unit cube (flat torus); distances use the minimum-image rule.
// The cube and ball satisfy an interior cone condition with the parameters
// reported by cone_angle()/cone_radius(); the periodic cube has no boundary.
class Domain {
  public:
    static Domain unit_cube(int d);
    static Domain ball(int d, double radius = 1.0);
    static Domain periodic_cube(int d);

    int dim() const { return d_; }
    DomainShape shape() const { return shape_; }
    double radius() const { return radius_; }
    bool periodic() const { return shape_ == DomainShape::PeriodicCube; }

    bool contains(const Point& x) const;
    double volume() const;

    // Squared distance honoring the domain metric (minimum image when periodic).
    double dist2(const Point& a, const Point& b) const;
    double dist(const Point& a, const Point& b) const;

    // Axis-aligned bounding box, used by rejection samplers and probe grids.
    void bounding_box(Point& lo, Point& hi) const;

    // Interior cone condition parameters (angle in radians, cone length).
    // Cube: the cone fits inside the corner orthant around the main diagonal.
    // Ball: any boundary point sees an inward cone of half-angle pi/6 with
    // length radius (a chord bound gives 2*R*cos(pi/6) > R).
    double cone_angle() const;
    double cone_radius() const;

    // Deterministic candidate grid covering the domain: tensor grid with
    // `resolution` nodes per axis (inclusive endpoints; the periodic cube
    // drops the right endpoint since it aliases 0), filtered by membership.
    // Every domain point has a grid node within one cell diagonal (within
    // half a diagonal on cube domains, where no nodes are filtered away).
    std::vector<Point> candidate_grid(int resolution) const;
    // Half cell diagonal of candidate_grid(resolution).
    double grid_covering_radius(int resolution) const;

    // Quadrature rule (nodes and positive weights summing to the volume)
    // accurate far beyond 1e-6 for smooth integrands: tensor Gauss-Legendre
    // on cubes, product polar/spherical rules on balls (d <= 3), and the
    // trapezoid rule on periodic cubes (spectrally accurate there).
    // `level` scales the node count per axis.
    std::vector<std::pair<Point, double>> quadrature(int level = 32) const;

  private:
    Domain(DomainShape s, int d, double radius);
    DomainShape shape_;
    int d_;
    double radius_;
};

}  // namespace mlslab::geom
