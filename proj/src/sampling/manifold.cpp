#include "mlslab/sampling/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mlslab/errors.hpp"

namespace mlslab::sampling {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// graph height map amplitudes; small enough that distance minimization is
// well conditioned, large enough that curvature is visible in experiments
constexpr double kAmpA = 0.1;
constexpr double kAmpB = 0.05;

double norm(const geom::Point& p) {
    double s = 0.0;
    for (double c : p) s += c * c;
    return std::sqrt(s);
}

}  // namespace

ReferenceManifold ReferenceManifold::circle() { return {Kind::Circle, 1, 2}; }
ReferenceManifold ReferenceManifold::sphere() { return {Kind::Sphere, 2, 3}; }

ReferenceManifold ReferenceManifold::graph(int d, int D) {
    if (d < 1 || d > 2) throw ArgumentError("graph manifold supports intrinsic dim 1 or 2");
    if (D <= d) throw ArgumentError("graph manifold needs ambient dim > intrinsic dim");
    ReferenceManifold m(Kind::Graph, d, D);
    // cache the area-element envelope for rejection sampling
    const int res = d == 1 ? 4096 : 256;
    double sup = 0.0;
    geom::Point u(d);
    std::vector<int> idx(d, 0);
    while (true) {
        for (int j = 0; j < d; ++j) u[j] = double(idx[j]) / res;
        sup = std::max(sup, m.graph_area_element(u));
        int j = d - 1;
        while (j >= 0 && ++idx[j] == res) idx[j--] = 0;
        if (j < 0) break;
    }
    m.area_envelope_ = sup * 1.01;
    return m;
}

ReferenceManifold ReferenceManifold::flat(int d, int D) {
    if (d < 1) throw ArgumentError("flat manifold needs intrinsic dim >= 1");
    if (D <= d) throw ArgumentError("flat manifold needs ambient dim > intrinsic dim");
    return {Kind::Flat, d, D};
}

std::vector<double> ReferenceManifold::height(const geom::Point& u) const {
    if (kind_ == Kind::Flat) return std::vector<double>(D_ - d_, 0.0);
    if (kind_ != Kind::Graph) return {};
    std::vector<double> val;
    std::vector<std::vector<double>> grad;
    graph_height_jet(u, val, grad);
    return val;
}

// phi_m(u) = A*sin(2 pi u_a + c_m) + B*cos(2 pi u_b), a = m mod d,
// b = (m+1) mod d: 1-periodic and C-infinity in every component.
void ReferenceManifold::graph_height_jet(const geom::Point& u, std::vector<double>& val,
                                         std::vector<std::vector<double>>& grad) const {
    const int extra = D_ - d_;
    val.assign(extra, 0.0);
    grad.assign(extra, std::vector<double>(d_, 0.0));
    for (int m = 0; m < extra; ++m) {
        const int a = m % d_;
        const int b = (m + 1) % d_;
        const double cm = 0.4 * (m + 1);
        val[m] = kAmpA * std::sin(kTwoPi * u[a] + cm) + kAmpB * std::cos(kTwoPi * u[b]);
        grad[m][a] += kAmpA * kTwoPi * std::cos(kTwoPi * u[a] + cm);
        grad[m][b] += -kAmpB * kTwoPi * std::sin(kTwoPi * u[b]);
    }
}

geom::Point ReferenceManifold::embed(const geom::Point& u) const {
    switch (kind_) {
        case Kind::Circle: {
            const double a = kTwoPi * u.at(0);
            return {std::cos(a), std::sin(a)};
        }
        case Kind::Sphere: {
            // area-preserving cylindrical map: u0 azimuth, u1 height
            const double az = kTwoPi * u.at(0);
            const double z = 2.0 * u.at(1) - 1.0;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            return {r * std::cos(az), r * std::sin(az), z};
        }
        case Kind::Graph: {
            if (static_cast<int>(u.size()) != d_)
                throw ArgumentError("graph parameter dimension mismatch");
            geom::Point p(u);
            p.resize(D_);
            std::vector<double> val;
            std::vector<std::vector<double>> grad;
            graph_height_jet(u, val, grad);
            for (int m = 0; m < D_ - d_; ++m) p[d_ + m] = val[m];
            return p;
        }
        case Kind::Flat: {
            if (static_cast<int>(u.size()) != d_)
                throw ArgumentError("flat parameter dimension mismatch");
            geom::Point p(u);
            p.resize(D_, 0.0);
            return p;
        }
    }
    throw ArgumentError("unreachable manifold kind");
}

double ReferenceManifold::graph_area_element(const geom::Point& u) const {
    std::vector<double> val;
    std::vector<std::vector<double>> grad;
    graph_height_jet(u, val, grad);
    // metric tensor M = I_d + G^T G, area element sqrt(det M)
    if (d_ == 1) {
        double s = 1.0;
        for (const auto& g : grad) s += g[0] * g[0];
        return std::sqrt(s);
    }
    double m00 = 1.0, m01 = 0.0, m11 = 1.0;
    for (const auto& g : grad) {
        m00 += g[0] * g[0];
        m01 += g[0] * g[1];
        m11 += g[1] * g[1];
    }
    return std::sqrt(m00 * m11 - m01 * m01);
}

double ReferenceManifold::distance(const geom::Point& p) const {
    if (static_cast<int>(p.size()) != D_) throw ArgumentError("ambient dimension mismatch");
    switch (kind_) {
        case Kind::Circle:
        case Kind::Sphere:
            return std::fabs(norm(p) - 1.0);
        case Kind::Flat: {
            double s = 0.0;
            for (int j = 0; j < d_; ++j) {
                const double t = p[j] - std::clamp(p[j], 0.0, 1.0);
                s += t * t;
            }
            for (int j = d_; j < D_; ++j) s += p[j] * p[j];
            return std::sqrt(s);
        }
        case Kind::Graph:
            break;
    }
    // dense scan over the closed parameter cube plus descent refinement;
    // the candidate margin uses a global Lipschitz bound of the squared
    // objective so the true basin is always refined
    auto g = [&](const geom::Point& u) {
        const geom::Point x = embed(u);
        double s = 0.0;
        for (int j = 0; j < D_; ++j) s += (p[j] - x[j]) * (p[j] - x[j]);
        return s;
    };
    auto g_grad = [&](const geom::Point& u, geom::Point& out) {
        std::vector<double> val;
        std::vector<std::vector<double>> grad;
        graph_height_jet(u, val, grad);
        out.assign(d_, 0.0);
        for (int j = 0; j < d_; ++j) out[j] = -2.0 * (p[j] - u[j]);
        for (int m = 0; m < D_ - d_; ++m)
            for (int j = 0; j < d_; ++j)
                out[j] += -2.0 * (p[d_ + m] - val[m]) * grad[m][j];
    };
    const int res = d_ == 1 ? 8192 : 384;
    const double cell = 1.0 / res;
    // |grad g| <= 2 * dist_to_graph_box * |x'(u)|; generous closed-form bound
    double pnorm = norm(p);
    const double lip = 2.0 * (pnorm + std::sqrt(double(d_)) + kAmpA + kAmpB) *
                       (1.0 + kTwoPi * (kAmpA + kAmpB) * std::sqrt(double(d_)));

    std::vector<geom::Point> nodes;
    std::vector<double> values;
    double gmin = std::numeric_limits<double>::infinity();
    geom::Point u(d_);
    std::vector<int> idx(d_, 0);
    while (true) {
        for (int j = 0; j < d_; ++j) u[j] = std::min(1.0, double(idx[j]) * cell);
        const double v = g(u);
        nodes.push_back(u);
        values.push_back(v);
        gmin = std::min(gmin, v);
        int j = d_ - 1;
        while (j >= 0 && ++idx[j] == res + 1) idx[j--] = 0;
        if (j < 0) break;
    }
    const double margin = lip * cell * std::sqrt(double(d_));
    double best = gmin;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (values[i] > gmin + margin) continue;
        // projected gradient descent with backtracking
        geom::Point cur = nodes[i];
        double fcur = values[i];
        geom::Point grad, trial(d_);
        for (int it = 0; it < 200; ++it) {
            g_grad(cur, grad);
            double step = 0.25;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                double shift = 0.0;
                for (int j = 0; j < d_; ++j) {
                    trial[j] = std::clamp(cur[j] - step * grad[j], 0.0, 1.0);
                    shift = std::max(shift, std::fabs(trial[j] - cur[j]));
                }
                const double ftrial = g(trial);
                if (ftrial < fcur) {
                    cur = trial;
                    fcur = ftrial;
                    moved = shift > 1e-14;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        best = std::min(best, fcur);
    }
    return std::sqrt(best);
}

bool ReferenceManifold::on_manifold(const geom::Point& p, double tol) const {
    if (static_cast<int>(p.size()) != D_) return false;
    switch (kind_) {
        case Kind::Circle:
        case Kind::Sphere:
            return std::fabs(norm(p) - 1.0) <= tol;
        case Kind::Graph:
        case Kind::Flat: {
            geom::Point u(p.begin(), p.begin() + d_);
            for (double c : u)
                if (c < -tol || c > 1.0 + tol) return false;
            const auto val = height(u);
            for (int m = 0; m < D_ - d_; ++m)
                if (std::fabs(p[d_ + m] - val[m]) > tol) return false;
            return true;
        }
    }
    return false;
}

geom::Point ReferenceManifold::sample_point(Rng& rng, geom::Point* param_out) const {
    switch (kind_) {
        case Kind::Circle: {
            const double u = rng.uniform();
            if (param_out) *param_out = {u};
            return embed({u});
        }
        case Kind::Sphere: {
            // normalized Gaussian triple; uniform by rotational symmetry
            while (true) {
                geom::Point p = {rng.normal(), rng.normal(), rng.normal()};
                const double r = norm(p);
                if (r < 1e-8) continue;
                for (double& c : p) c /= r;
                if (param_out) {
                    double az = std::atan2(p[1], p[0]);
                    if (az < 0) az += kTwoPi;
                    *param_out = {az / kTwoPi, (p[2] + 1.0) / 2.0};
                }
                return p;
            }
        }
        case Kind::Graph: {
            // parameter-space rejection against the area element
            while (true) {
                geom::Point u(d_);
                for (int j = 0; j < d_; ++j) u[j] = rng.uniform();
                const double accept = graph_area_element(u) / area_envelope_;
                if (accept > 1.0)
                    throw ConfigError("graph area-element envelope violated");
                if (rng.uniform() < accept) {
                    if (param_out) *param_out = u;
                    return embed(u);
                }
            }
        }
        case Kind::Flat: {
            // unit area element: uniform in parameters is uniform on the patch
            geom::Point u(d_);
            for (int j = 0; j < d_; ++j) u[j] = rng.uniform();
            if (param_out) *param_out = u;
            return embed(u);
        }
    }
    throw ArgumentError("unreachable manifold kind");
}

std::vector<geom::Point> ReferenceManifold::reference_grid(int resolution) const {
    if (resolution < 2) throw ArgumentError("reference grid resolution must be >= 2");
    std::vector<geom::Point> out;
    switch (kind_) {
        case Kind::Circle:
            for (int i = 0; i < resolution; ++i)
                out.push_back(embed({double(i) / resolution}));
            return out;
        case Kind::Sphere:
            for (int i = 0; i < resolution; ++i)
                for (int j = 0; j < resolution; ++j)
                    out.push_back(embed({double(i) / resolution, (j + 0.5) / resolution}));
            return out;
        case Kind::Graph:
        case Kind::Flat: {
            std::vector<int> idx(d_, 0);
            geom::Point u(d_);
            while (true) {
                for (int j = 0; j < d_; ++j) u[j] = double(idx[j]) / (resolution - 1);
                out.push_back(embed(u));
                int j = d_ - 1;
                while (j >= 0 && ++idx[j] == resolution) idx[j--] = 0;
                if (j < 0) break;
            }
            return out;
        }
    }
    return out;
}

std::vector<geom::Point> sample_manifold_points(const ReferenceManifold& m, std::size_t n,
                                                std::uint64_t seed,
                                                std::vector<geom::Point>* params) {
    Rng rng(seed);
    std::vector<geom::Point> pts;
    pts.reserve(n);
    if (params) params->clear();
    for (std::size_t i = 0; i < n; ++i) {
        geom::Point u;
        pts.push_back(m.sample_point(rng, params ? &u : nullptr));
        if (params) params->push_back(u);
    }
    return pts;
}

}  // namespace mlslab::sampling
