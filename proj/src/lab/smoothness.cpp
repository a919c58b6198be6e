#include "mlslab/lab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlslab/errors.hpp"

namespace mlslab::lab {

SmoothnessReport smoothness_probe(const mls::MlsModel& model, int max_order,
                                  double grid_step) {
    if (model.cloud.empty())
        throw InsufficientDataError("smoothness probe needs a non-empty cloud", 0);
    if (max_order < 1 || max_order > model.degree + 1)
        throw ArgumentError("max_order must lie in [1, degree + 1]");
    if (!(grid_step > 0.0)) throw ArgumentError("grid step must be positive");

    const int d = model.cloud.dim();
    geom::Point lo = model.cloud[0], hi = model.cloud[0];
    for (std::size_t i = 1; i < model.cloud.size(); ++i)
        for (int j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], model.cloud[i][j]);
            hi[j] = std::max(hi[j], model.cloud[i][j]);
        }
    const double span = hi[0] - lo[0];
    if (!(span > 0.0)) throw ArgumentError("cloud is degenerate along the transect axis");
    const double a = lo[0] + 0.1 * span;
    const double b = hi[0] - 0.1 * span;
    const double len = b - a;
    if (len / grid_step > 5e6) throw ArgumentError("transect grid too fine");
    const std::size_t m = static_cast<std::size_t>(std::floor(len / grid_step)) + 1;
    if (m < 3) throw ArgumentError("transect grid needs at least 3 points");

    SmoothnessReport rep;
    rep.max_order = max_order;
    rep.grid_step = grid_step;
    rep.grid_points = m;
    rep.max_abs.assign(max_order, 0.0);

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> vals(max_order, std::vector<double>(m, kNaN));
    std::vector<std::vector<std::size_t>> hoods(m);
    std::vector<bool> valid(m, false);

    geom::Point p(d);
    for (int j = 1; j < d; ++j) p[j] = 0.5 * (lo[j] + hi[j]);
    for (std::size_t i = 0; i < m; ++i) {
        p[0] = a + double(i) * grid_step;
        try {
            auto fit = mls::local_fit(model, p);
            hoods[i] = std::move(fit.neighbor_indices);
            for (int k = 0; k < max_order; ++k) {
                const double v =
                    mls::mls_eval_derivative(model, p, geom::MultiIndex::axis(d, 0, k));
                vals[k][i] = v;
                rep.max_abs[k] = std::max(rep.max_abs[k], std::fabs(v));
            }
            valid[i] = true;
        } catch (const InsufficientDataError&) {
            ++rep.failures;
        } catch (const IllConditionedError&) {
            ++rep.failures;
        }
    }

    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!valid[i] || !valid[i + 1]) continue;
        if (hoods[i] != hoods[i + 1]) ++rep.neighbor_set_changes;
        const int top = max_order - 1;
        rep.max_normalized_jump =
            std::max(rep.max_normalized_jump,
                     std::fabs(vals[top][i + 1] - vals[top][i]) / grid_step);
    }
    for (int k = 1; k < max_order; ++k) {
        const double scale = std::max(1.0, rep.max_abs[k]);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            if (!valid[i - 1] || !valid[i] || !valid[i + 1]) continue;
            const double dd = (vals[k - 1][i + 1] - vals[k - 1][i - 1]) / (2.0 * grid_step);
            rep.max_divided_diff_mismatch = std::max(
                rep.max_divided_diff_mismatch, std::fabs(dd - vals[k][i]) / scale);
        }
    }
    return rep;
}

}  // namespace mlslab::lab
