#include "mlslab/mmls/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mlslab/errors.hpp"
#include "mlslab/lab/slope.hpp"
#include "mlslab/sampling/rng.hpp"

namespace mlslab::mmls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// stream family tag; the lab experiments use 1..6
constexpr std::uint64_t kStreamTag = 7;
// aggregates at or below rounding level carry no rate information
constexpr double kRoundingFloor = 1e-12;

// Fill distance of the sample set against a dense manifold grid. The grid
// resolution grows proportionally with n, keeping the relative measurement
// bias constant along the grid so fitted slopes are unaffected.
double measure_manifold_fill(const sampling::ReferenceManifold& m,
                             const geom::PointCloud& cloud, std::size_t n) {
    int resolution;
    if (m.intrinsic_dim() == 1)
        resolution = static_cast<int>(std::max<std::size_t>(2048, 4 * n));
    else
        resolution = std::max(64, static_cast<int>(std::ceil(2.0 * std::sqrt(double(n)))));
    double fill = 0.0;
    for (const geom::Point& g : m.reference_grid(resolution))
        fill = std::max(fill, cloud.nearest_distance(g));
    return fill;
}

}  // namespace

lab::RateReport mmls_rate_experiment(const sampling::ReferenceManifold& manifold,
                                     const MmlsConfig& cfg,
                                     const std::vector<std::size_t>& n_grid, int trials,
                                     std::uint64_t master_seed) {
    if (n_grid.empty()) throw ArgumentError("n grid is empty");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1])
            throw ArgumentError("n grid must be strictly increasing");
    if (trials < 1) throw ArgumentError("trials must be positive");
    if (manifold.intrinsic_dim() != cfg.intrinsic_dim)
        throw ArgumentError("configured intrinsic dimension does not match the manifold");
    if (cfg.ambient_dim != 0 && cfg.ambient_dim != manifold.ambient_dim())
        throw ArgumentError("configured ambient dimension does not match the manifold");

    lab::RateReport rep;
    rep.target = lab::ExperimentTarget::ErrorRate;
    rep.aggregation = "median";
    rep.n_grid = n_grid;

    for (std::size_t n : n_grid) {
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t seed = sampling::Rng::derive(
                master_seed,
                {kStreamTag, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)});
            const geom::PointCloud cloud(sampling::sample_manifold_points(manifold, n, seed));
            std::vector<ProjectionDiagnostics> diags;
            // probes are the samples themselves: they lie on the manifold, so
            // the probe fill distance equals the measured sample fill
            const geom::PointCloud projected = reconstruct_manifold(cloud, cloud, cfg, &diags);

            lab::RawRecord rec;
            rec.n = n;
            rec.trial = t;
            rec.h_measured = measure_manifold_fill(manifold, cloud, n);
            for (const auto& dg : diags)
                if (!dg.failure.empty()) ++rec.failures;
            if (projected.empty()) {
                rec.statistic = kNaN;
                rec.degenerate = true;
            } else {
                double err = 0.0;
                for (std::size_t i = 0; i < projected.size(); ++i)
                    err = std::max(err, manifold.distance(projected[i]));
                rec.statistic = err;
            }
            rep.total_failures += rec.failures;
            if (rec.degenerate) ++rep.degenerate_trials;
            rep.raw.push_back(std::move(rec));
        }
    }

    for (std::size_t n : n_grid) {
        std::vector<double> stats, hs;
        for (const auto& r : rep.raw) {
            if (r.n != n) continue;
            if (!r.degenerate && std::isfinite(r.statistic)) stats.push_back(r.statistic);
            if (std::isfinite(r.h_measured)) hs.push_back(r.h_measured);
        }
        rep.aggregate.push_back(stats.empty() ? kNaN : lab::interpolated_quantile(stats, 0.5));
        rep.grid_x.push_back(hs.empty() ? kNaN : lab::interpolated_quantile(hs, 0.5));
    }

    rep.monotone_decreasing = rep.aggregate.size() >= 2;
    for (std::size_t i = 0; i + 1 < rep.aggregate.size(); ++i)
        if (!std::isfinite(rep.aggregate[i]) || !std::isfinite(rep.aggregate[i + 1]) ||
            rep.aggregate[i + 1] >= rep.aggregate[i])
            rep.monotone_decreasing = false;

    double peak = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < rep.aggregate.size(); ++i) {
        if (std::isfinite(rep.aggregate[i])) peak = std::max(peak, rep.aggregate[i]);
        if (std::isfinite(rep.grid_x[i]) && rep.grid_x[i] > 0.0 &&
            std::isfinite(rep.aggregate[i]) && rep.aggregate[i] > 0.0)
            pts.emplace_back(rep.grid_x[i], rep.aggregate[i]);
    }
    if (peak > kRoundingFloor && pts.size() == rep.aggregate.size() && pts.size() >= 4) {
        const lab::SlopeFit fit = lab::fit_loglog_slope(pts);
        rep.slope_fitted = true;
        rep.slope = fit.slope;
        rep.intercept = fit.intercept;
        rep.std_error = fit.std_error;
        for (const auto& [x, y] : pts)
            rep.residual_max =
                std::max(rep.residual_max,
                         std::fabs(std::log(y) - fit.intercept - fit.slope * std::log(x)));
    }
    return rep;
}

}  // namespace mlslab::mmls
