#include "mlslab/geometry/domain.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "mlslab/errors.hpp"

namespace mlslab::geom {

Domain::Domain(DomainShape s, int d, double radius) : shape_(s), d_(d), radius_(radius) {
    if (d < 1) throw ArgumentError("domain dimension must be positive");
    if (s == DomainShape::Ball && !(radius > 0.0))
        throw ArgumentError("ball radius must be positive");
}

Domain Domain::unit_cube(int d) { return Domain(DomainShape::UnitCube, d, 0.0); }
Domain Domain::ball(int d, double radius) { return Domain(DomainShape::Ball, d, radius); }
Domain Domain::periodic_cube(int d) { return Domain(DomainShape::PeriodicCube, d, 0.0); }

bool Domain::contains(const Point& x) const {
    if (static_cast<int>(x.size()) != d_) throw ArgumentError("point dimension mismatch");
    switch (shape_) {
        case DomainShape::UnitCube:
        case DomainShape::PeriodicCube:
            for (double c : x)
                if (c < 0.0 || c > 1.0) return false;
            return true;
        case DomainShape::Ball: {
            double r2 = 0.0;
            for (double c : x) r2 += c * c;
            return r2 <= radius_ * radius_;
        }
    }
    return false;
}

double Domain::volume() const {
    switch (shape_) {
        case DomainShape::UnitCube:
        case DomainShape::PeriodicCube:
            return 1.0;
        case DomainShape::Ball: {
            // vol = pi^{d/2} R^d / Gamma(d/2 + 1)
            double v = std::pow(std::numbers::pi, d_ / 2.0) /
                       std::tgamma(d_ / 2.0 + 1.0);
            return v * std::pow(radius_, d_);
        }
    }
    return 0.0;
}

double Domain::dist2(const Point& a, const Point& b) const {
    if (static_cast<int>(a.size()) != d_ || static_cast<int>(b.size()) != d_)
        throw ArgumentError("point dimension mismatch");
    double s = 0.0;
    if (periodic()) {
        for (int j = 0; j < d_; ++j) {
            double t = std::fabs(a[j] - b[j]);
            t = std::min(t, 1.0 - t);  // minimum image on the unit torus
            s += t * t;
        }
    } else {
        for (int j = 0; j < d_; ++j) {
            double t = a[j] - b[j];
            s += t * t;
        }
    }
    return s;
}

double Domain::dist(const Point& a, const Point& b) const { return std::sqrt(dist2(a, b)); }

void Domain::bounding_box(Point& lo, Point& hi) const {
    lo.assign(d_, shape_ == DomainShape::Ball ? -radius_ : 0.0);
    hi.assign(d_, shape_ == DomainShape::Ball ? radius_ : 1.0);
}

double Domain::cone_angle() const {
    switch (shape_) {
        case DomainShape::UnitCube:
            // cone around the corner diagonal, stays in the orthant
            return std::numbers::pi / 2.0 - std::acos(1.0 / std::sqrt(double(d_)));
        case DomainShape::Ball:
            return std::numbers::pi / 6.0;
        case DomainShape::PeriodicCube:
            return std::numbers::pi / 2.0;  // boundaryless; any direction works
    }
    return 0.0;
}

double Domain::cone_radius() const {
    switch (shape_) {
        case DomainShape::UnitCube:
            return 0.5;
        case DomainShape::Ball:
            return radius_;
        case DomainShape::PeriodicCube:
            return 0.5;
    }
    return 0.0;
}

std::vector<Point> Domain::candidate_grid(int resolution) const {
    if (resolution < 2) throw ArgumentError("grid resolution must be >= 2");
    Point lo, hi;
    bounding_box(lo, hi);
    // Periodic cube: node 1.0 aliases 0.0, so step past the right endpoint.
    const bool drop_right = periodic();
    std::vector<double> axis(resolution);
    std::vector<Point> grid;
    std::vector<int> idx(d_, 0);
    std::vector<std::vector<double>> axes(d_);
    for (int j = 0; j < d_; ++j) {
        axes[j].resize(resolution);
        const double denom = drop_right ? resolution : (resolution - 1);
        for (int i = 0; i < resolution; ++i)
            axes[j][i] = lo[j] + (hi[j] - lo[j]) * (double(i) / denom);
    }
    Point p(d_);
    while (true) {
        for (int j = 0; j < d_; ++j) p[j] = axes[j][idx[j]];
        if (contains(p)) grid.push_back(p);
        int j = d_ - 1;
        while (j >= 0 && ++idx[j] == resolution) idx[j--] = 0;
        if (j < 0) break;
    }
    return grid;
}

double Domain::grid_covering_radius(int resolution) const {
    if (resolution < 2) throw ArgumentError("grid resolution must be >= 2");
    Point lo, hi;
    bounding_box(lo, hi);
    const double denom = periodic() ? resolution : (resolution - 1);
    const double step = (hi[0] - lo[0]) / denom;
    return 0.5 * step * std::sqrt(double(d_));
}

namespace {

// Gauss-Legendre rule on [-1, 1] by Golub-Welsch: nodes are eigenvalues of
// the Jacobi tridiagonal, weights 2 * (first eigenvector component)^2.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * double(k) * k - 1.0);
        jacobi(k, k - 1) = jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        w[i] = 2.0 * v * v;
    }
}

// same rule mapped to [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
    gauss_legendre(n, x, w);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.5 * (a + b) + 0.5 * (b - a) * x[i];
        w[i] *= 0.5 * (b - a);
    }
}

}  // namespace

std::vector<std::pair<Point, double>> Domain::quadrature(int level) const {
    if (level < 2) throw ArgumentError("quadrature level must be >= 2");
    std::vector<std::pair<Point, double>> rule;
    switch (shape_) {
        case DomainShape::UnitCube: {
            std::vector<double> x, w;
            gauss_legendre(level, 0.0, 1.0, x, w);
            std::vector<int> idx(d_, 0);
            while (true) {
                Point p(d_);
                double weight = 1.0;
                for (int j = 0; j < d_; ++j) {
                    p[j] = x[idx[j]];
                    weight *= w[idx[j]];
                }
                rule.emplace_back(std::move(p), weight);
                int j = d_ - 1;
                while (j >= 0 && ++idx[j] == level) idx[j--] = 0;
                if (j < 0) break;
            }
            return rule;
        }
        case DomainShape::PeriodicCube: {
            // equal weights on the periodic grid: the trapezoid rule is
            // spectrally accurate for smooth periodic integrands
            const int m = std::max(level, 32);
            const double cell = 1.0 / std::pow(double(m), d_);
            std::vector<int> idx(d_, 0);
            while (true) {
                Point p(d_);
                for (int j = 0; j < d_; ++j) p[j] = double(idx[j]) / m;
                rule.emplace_back(std::move(p), cell);
                int j = d_ - 1;
                while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
                if (j < 0) break;
            }
            return rule;
        }
        case DomainShape::Ball:
            break;
    }
    std::vector<double> xr, wr;
    gauss_legendre(level, 0.0, radius_, xr, wr);
    if (d_ == 1) {
        std::vector<double> x, w;
        gauss_legendre(level, -radius_, radius_, x, w);
        for (int i = 0; i < level; ++i) rule.emplace_back(Point{x[i]}, w[i]);
        return rule;
    }
    if (d_ == 2) {
        // polar product rule; the angular trapezoid part is spectral
        const int m = 4 * level;
        for (int i = 0; i < level; ++i)
            for (int j = 0; j < m; ++j) {
                const double th = 2.0 * std::numbers::pi * j / m;
                rule.emplace_back(Point{xr[i] * std::cos(th), xr[i] * std::sin(th)},
                                  wr[i] * xr[i] * 2.0 * std::numbers::pi / m);
            }
        return rule;
    }
    if (d_ == 3) {
        // spherical product rule with Gauss nodes in cos(polar angle)
        std::vector<double> xu, wu;
        gauss_legendre(level, -1.0, 1.0, xu, wu);
        const int m = 2 * level;
        for (int i = 0; i < level; ++i)
            for (int k = 0; k < level; ++k) {
                const double rho = xr[i] * std::sqrt(1.0 - xu[k] * xu[k]);
                const double wk = wr[i] * xr[i] * xr[i] * wu[k] *
                                  2.0 * std::numbers::pi / m;
                for (int j = 0; j < m; ++j) {
                    const double th = 2.0 * std::numbers::pi * j / m;
                    rule.emplace_back(
                        Point{rho * std::cos(th), rho * std::sin(th), xr[i] * xu[k]}, wk);
                }
            }
        return rule;
    }
    throw ArgumentError("ball quadrature supports dimension <= 3");
}

}  // namespace mlslab::geom
