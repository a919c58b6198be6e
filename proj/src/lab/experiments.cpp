#include "mlslab/lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlslab/errors.hpp"
#include "mlslab/geometry/set_statistics.hpp"
#include "mlslab/lab/slope.hpp"
#include "mlslab/sampling/rng.hpp"
#include "mlslab/sampling/samplers.hpp"

namespace mlslab::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t target_tag(ExperimentTarget t) {
    return static_cast<std::uint64_t>(t) + 1;
}

std::uint64_t trial_seed(const ExperimentPlan& plan, std::size_t n, int trial) {
    return sampling::Rng::derive(plan.master_seed,
                                 {target_tag(plan.target), n,
                                  static_cast<std::uint64_t>(trial)});
}

bool needs_slope_grid(ExperimentTarget t) {
    return t == ExperimentTarget::Fill || t == ExperimentTarget::Separation ||
           t == ExperimentTarget::ErrorRate || t == ExperimentTarget::LambdaMin;
}

// Resolution scaling like (n / log n)^{1/d} keeps the grid covering radius a
// fixed small fraction of the expected fill distance, so the (one-sided)
// measurement bias is a constant factor along the grid and slopes survive.
int fill_resolution_for(const ExperimentPlan& plan, std::size_t n) {
    if (plan.fill_resolution > 0) return plan.fill_resolution;
    const int d = plan.domain.dim();
    const double target =
        10.0 * std::pow(double(n) / std::log(double(n)), 1.0 / d) + 1.0;
    const double cap = std::floor(std::pow(2097152.0, 1.0 / d));  // ~2M nodes
    return static_cast<int>(std::max(65.0, std::min(std::ceil(target), cap)));
}

double measure_fill(const ExperimentPlan& plan, const geom::PointCloud& cloud,
                    std::size_t n) {
    return geom::fill_distance(cloud, plan.domain, fill_resolution_for(plan, n));
}

mls::MlsModel trial_model(const ExperimentPlan& plan, geom::PointCloud cloud,
                          const TestFunction* f) {
    mls::MlsModel model{std::move(cloud), {}, plan.degree, plan.weight,
                        plan.bandwidth};
    model.values.reserve(model.cloud.size());
    for (std::size_t i = 0; i < model.cloud.size(); ++i)
        model.values.push_back(f ? f->value(model.cloud[i]) : 0.0);
    return model;
}

std::vector<geom::Point> all_probes(const ExperimentPlan& plan) {
    auto probes = interior_probes(plan.domain, plan.probes_per_axis);
    for (auto& p : boundary_probes(plan.domain)) probes.push_back(std::move(p));
    return probes;
}

}  // namespace

std::string target_name(ExperimentTarget t) {
    switch (t) {
        case ExperimentTarget::Fill: return "fill";
        case ExperimentTarget::Separation: return "separation";
        case ExperimentTarget::NeighborCount: return "neighbor-count";
        case ExperimentTarget::LambdaMin: return "lambda-min";
        case ExperimentTarget::ErrorRate: return "error-rate";
        case ExperimentTarget::Smoothness: return "smoothness";
    }
    throw ArgumentError("unknown experiment target");
}

ExperimentTarget target_from_name(const std::string& name) {
    for (auto t : {ExperimentTarget::Fill, ExperimentTarget::Separation,
                   ExperimentTarget::NeighborCount, ExperimentTarget::LambdaMin,
                   ExperimentTarget::ErrorRate, ExperimentTarget::Smoothness})
        if (target_name(t) == name) return t;
    throw ConfigError("unknown experiment target: " + name);
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.n_grid.empty())
        throw ArgumentError("experiment plan needs a sample-size grid");
    for (std::size_t i = 0; i < plan.n_grid.size(); ++i) {
        if (plan.n_grid[i] < 2) throw ArgumentError("sample sizes must be at least 2");
        if (i > 0 && plan.n_grid[i] <= plan.n_grid[i - 1])
            throw ArgumentError("sample-size grid must be strictly increasing");
    }
    if (needs_slope_grid(plan.target) && plan.n_grid.size() < 4)
        throw ArgumentError("slope fits need at least 4 grid points");
    if (plan.trials < 1) throw ArgumentError("trials must be positive");
    if (plan.degree < 0) throw ArgumentError("degree must be nonnegative");
    if (!(plan.max_failure_fraction >= 0.0 && plan.max_failure_fraction <= 1.0))
        throw ArgumentError("max failure fraction must lie in [0, 1]");
    if (plan.probes_per_axis < 1) throw ArgumentError("probes per axis must be positive");
    if (plan.fill_resolution < 0)
        throw ArgumentError("fill resolution must be positive (or 0 for automatic)");
}

double interpolated_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ArgumentError("quantile of an empty set");
    if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * double(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - double(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

std::vector<geom::Point> interior_probes(const geom::Domain& domain, int per_axis) {
    if (per_axis < 1) throw ArgumentError("probes per axis must be positive");
    const int d = domain.dim();
    geom::Point lo, hi;
    domain.bounding_box(lo, hi);
    std::vector<geom::Point> out;
    std::vector<int> idx(d, 0);
    while (true) {
        geom::Point p(d);
        for (int j = 0; j < d; ++j)
            p[j] = lo[j] + (hi[j] - lo[j]) * (idx[j] + 0.5) / per_axis;
        bool keep = domain.contains(p);
        if (keep && domain.shape() == geom::DomainShape::Ball) {
            double r2 = 0.0;
            for (double c : p) r2 += c * c;
            keep = std::sqrt(r2) <= domain.radius() * (1.0 - 0.5 / per_axis);
        }
        if (keep) out.push_back(std::move(p));
        int j = 0;
        while (j < d && ++idx[j] == per_axis) {
            idx[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return out;
}

std::vector<geom::Point> boundary_probes(const geom::Domain& domain) {
    const int d = domain.dim();
    std::vector<geom::Point> out;
    switch (domain.shape()) {
        case geom::DomainShape::UnitCube: {
            for (int mask = 0; mask < (1 << d); ++mask) {
                geom::Point p(d);
                for (int j = 0; j < d; ++j) p[j] = (mask >> j) & 1 ? 1.0 : 0.0;
                out.push_back(std::move(p));
            }
            if (d >= 2) {  // face centers (coincide with the corners when d = 1)
                for (int j = 0; j < d; ++j)
                    for (double v : {0.0, 1.0}) {
                        geom::Point p(d, 0.5);
                        p[j] = v;
                        out.push_back(std::move(p));
                    }
            }
            break;
        }
        case geom::DomainShape::Ball: {
            for (int j = 0; j < d; ++j)
                for (double s : {-1.0, 1.0}) {
                    geom::Point p(d, 0.0);
                    p[j] = s * domain.radius();
                    out.push_back(std::move(p));
                }
            break;
        }
        case geom::DomainShape::PeriodicCube:
            break;  // no boundary
    }
    return out;
}

RawRecord run_trial(const ExperimentPlan& plan, std::size_t n, int trial) {
    RawRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.h_measured = kNaN;
    const auto cloud =
        sampling::sample_iid(plan.domain, plan.density, n, trial_seed(plan, n, trial));
    switch (plan.target) {
        case ExperimentTarget::Fill: {
            rec.statistic = rec.h_measured = measure_fill(plan, cloud, n);
            return rec;
        }
        case ExperimentTarget::Separation: {
            rec.statistic = geom::separation(cloud, plan.domain);
            rec.degenerate = !(rec.statistic > 0.0);
            if (plan.measure_fill_in_separation)
                rec.h_measured = measure_fill(plan, cloud, n);
            return rec;
        }
        case ExperimentTarget::LambdaMin: {
            // The eigenvalue floor is about neighborhoods that see the full
            // weight support. Corner probes with a fast-decaying weight
            // measure boundary truncation instead, so this sweep stays on
            // the interior grid.
            auto model = trial_model(plan, cloud, nullptr);
            double lmin = std::numeric_limits<double>::infinity();
            for (const auto& p : interior_probes(plan.domain, plan.probes_per_axis)) {
                try {
                    lmin = std::min(lmin, mls::local_fit(model, p).lambda_min);
                } catch (const IllConditionedError& e) {
                    // still a valid eigenvalue measurement, but a failed fit
                    lmin = std::min(lmin, e.lambda_min);
                    ++rec.failures;
                } catch (const InsufficientDataError&) {
                    ++rec.failures;
                }
            }
            if (std::isfinite(lmin)) {
                rec.statistic = lmin;
            } else {
                rec.statistic = kNaN;
                rec.degenerate = true;
            }
            return rec;
        }
        default:
            throw ArgumentError(
                "run_trial handles fill, separation and lambda-min targets only");
    }
}

RawRecord run_error_trial(const ExperimentPlan& plan, const TestFunction& f,
                          const mls::DifferentialOperator& q, std::size_t n,
                          int trial) {
    const int d = plan.domain.dim();
    if (f.dim() != d) throw ArgumentError("test function dimension mismatch");
    for (const auto& [alpha, coeff] : q.terms) {
        if (alpha.dim() != d) throw ArgumentError("operator dimension mismatch");
        if (alpha.order() > plan.degree)
            throw ArgumentError("operator order exceeds the fit degree");
    }
    RawRecord rec;
    rec.n = n;
    rec.trial = trial;
    const auto cloud =
        sampling::sample_iid(plan.domain, plan.density, n, trial_seed(plan, n, trial));
    const auto model = trial_model(plan, cloud, &f);
    double err = 0.0;
    std::size_t ok = 0;
    for (const auto& p : all_probes(plan)) {
        try {
            const double s = mls::mls_eval_operator(model, p, q);
            err = std::max(err, std::fabs(s - f.apply(p, q)));
            ++ok;
        } catch (const InsufficientDataError&) {
            ++rec.failures;
        } catch (const IllConditionedError&) {
            ++rec.failures;
        }
    }
    if (ok == 0) {
        rec.statistic = kNaN;
        rec.degenerate = true;
    } else {
        rec.statistic = err;
    }
    rec.h_measured = measure_fill(plan, cloud, n);
    return rec;
}

RateReport assemble_report(const ExperimentPlan& plan, std::vector<RawRecord> raw,
                           int attempts_per_trial) {
    if (attempts_per_trial < 1)
        throw ArgumentError("attempts per trial must be positive");
    RateReport rep;
    rep.target = plan.target;
    rep.n_grid = plan.n_grid;
    switch (plan.target) {
        case ExperimentTarget::Fill:
        case ExperimentTarget::ErrorRate:
            rep.aggregation = "median";
            break;
        case ExperimentTarget::Separation:
            rep.aggregation = "p10";
            break;
        case ExperimentTarget::LambdaMin:
            rep.aggregation = "min";
            break;
        default:
            throw ArgumentError("no aggregation rule for this target");
    }
    std::sort(raw.begin(), raw.end(), [](const RawRecord& a, const RawRecord& b) {
        return a.n != b.n ? a.n < b.n : a.trial < b.trial;
    });

    for (const auto& r : raw) {
        rep.total_failures += r.failures;
        if (r.degenerate) ++rep.degenerate_trials;
    }
    const double fraction =
        double(rep.total_failures) / (double(raw.size()) * attempts_per_trial);
    if (!raw.empty() && fraction > plan.max_failure_fraction)
        throw ConvergenceError("failed local fits exceed the failure budget", fraction);

    const double q = rep.aggregation == "median" ? 0.5
                     : rep.aggregation == "p10" ? 0.1
                                                : 0.0;
    for (std::size_t n : plan.n_grid) {
        std::vector<double> stats, hs;
        for (const auto& r : raw) {
            if (r.n != n) continue;
            if (!r.degenerate && std::isfinite(r.statistic))
                stats.push_back(r.statistic);
            if (std::isfinite(r.h_measured)) hs.push_back(r.h_measured);
        }
        rep.aggregate.push_back(stats.empty() ? kNaN : interpolated_quantile(stats, q));
        if (plan.target == ExperimentTarget::ErrorRate)
            rep.grid_x.push_back(hs.empty() ? kNaN : interpolated_quantile(hs, 0.5));
        else
            rep.grid_x.push_back(double(n));
    }
    if (plan.target == ExperimentTarget::Fill) {
        const double d = plan.domain.dim();
        for (std::size_t i = 0; i < plan.n_grid.size(); ++i) {
            const double n = double(plan.n_grid[i]);
            rep.normalized.push_back(rep.aggregate[i] *
                                     std::pow(n / std::log(n), 1.0 / d));
        }
    }

    rep.monotone_decreasing = rep.aggregate.size() >= 2;
    for (std::size_t i = 0; i + 1 < rep.aggregate.size(); ++i)
        if (!std::isfinite(rep.aggregate[i]) || !std::isfinite(rep.aggregate[i + 1]) ||
            rep.aggregate[i + 1] >= rep.aggregate[i])
            rep.monotone_decreasing = false;

    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < rep.aggregate.size(); ++i)
        if (std::isfinite(rep.grid_x[i]) && rep.grid_x[i] > 0.0 &&
            std::isfinite(rep.aggregate[i]) && rep.aggregate[i] > 0.0)
            pts.emplace_back(rep.grid_x[i], rep.aggregate[i]);
    if (pts.size() == rep.aggregate.size() && pts.size() >= 4) {
        const SlopeFit fit = fit_loglog_slope(pts);
        rep.slope_fitted = true;
        rep.slope = fit.slope;
        rep.intercept = fit.intercept;
        rep.std_error = fit.std_error;
        for (const auto& [x, y] : pts)
            rep.residual_max =
                std::max(rep.residual_max,
                         std::fabs(std::log(y) - fit.intercept - fit.slope * std::log(x)));
    }
    rep.raw = std::move(raw);
    return rep;
}

namespace {

RateReport sample_statistic_experiment(const ExperimentPlan& plan) {
    validate_plan(plan);
    std::vector<RawRecord> raw;
    raw.reserve(plan.n_grid.size() * plan.trials);
    for (std::size_t n : plan.n_grid)
        for (int t = 0; t < plan.trials; ++t) raw.push_back(run_trial(plan, n, t));
    const int attempts =
        plan.target == ExperimentTarget::LambdaMin
            ? static_cast<int>(
                  interior_probes(plan.domain, plan.probes_per_axis).size())
            : 1;
    return assemble_report(plan, std::move(raw), std::max(attempts, 1));
}

}  // namespace

RateReport fill_rate_experiment(const ExperimentPlan& plan) {
    if (plan.target != ExperimentTarget::Fill)
        throw ArgumentError("plan target must be fill");
    return sample_statistic_experiment(plan);
}

RateReport separation_rate_experiment(const ExperimentPlan& plan) {
    if (plan.target != ExperimentTarget::Separation)
        throw ArgumentError("plan target must be separation");
    return sample_statistic_experiment(plan);
}

RateReport lambda_min_experiment(const ExperimentPlan& plan) {
    if (plan.target != ExperimentTarget::LambdaMin)
        throw ArgumentError("plan target must be lambda-min");
    return sample_statistic_experiment(plan);
}

NeighborCountReport neighbor_count_experiment(const ExperimentPlan& plan,
                                              const geom::Point& probe) {
    if (plan.target != ExperimentTarget::NeighborCount)
        throw ArgumentError("plan target must be neighbor-count");
    validate_plan(plan);
    if (static_cast<int>(probe.size()) != plan.domain.dim())
        throw ArgumentError("probe dimension mismatch");
    NeighborCountReport rep;
    rep.n_grid = plan.n_grid;
    rep.gamma_min = std::numeric_limits<double>::infinity();
    rep.gamma_max = 0.0;
    for (std::size_t n : plan.n_grid) {
        const double radius =
            plan.weight.support_scale() *
            plan.bandwidth.resolve(n, plan.domain.dim());
        double sum = 0.0;
        for (int t = 0; t < plan.trials; ++t) {
            const auto cloud = sampling::sample_iid(plan.domain, plan.density, n,
                                                    trial_seed(plan, n, t));
            const double count =
                double(cloud.range_count(probe, radius, plan.domain.periodic()));
            const double ratio = count / std::log(double(n));
            rep.raw.push_back({n, t, ratio, kNaN, 0, count == 0.0});
            rep.gamma_min = std::min(rep.gamma_min, ratio);
            rep.gamma_max = std::max(rep.gamma_max, ratio);
            sum += count;
        }
        rep.mean_count.push_back(sum / plan.trials);
    }
    return rep;
}

RateReport error_rate_experiment(const ExperimentPlan& plan, const TestFunction& f,
                                 const mls::DifferentialOperator& q) {
    if (plan.target != ExperimentTarget::ErrorRate)
        throw ArgumentError("plan target must be error-rate");
    validate_plan(plan);
    std::vector<RawRecord> raw;
    raw.reserve(plan.n_grid.size() * plan.trials);
    for (std::size_t n : plan.n_grid)
        for (int t = 0; t < plan.trials; ++t)
            raw.push_back(run_error_trial(plan, f, q, n, t));
    return assemble_report(plan, std::move(raw),
                           static_cast<int>(all_probes(plan).size()));
}

std::vector<double> quasi_uniformity_ratio(const RateReport& separation_report) {
    if (separation_report.target != ExperimentTarget::Separation)
        throw ArgumentError("quasi-uniformity ratio needs a separation report");
    std::vector<double> out;
    for (std::size_t n : separation_report.n_grid) {
        std::vector<double> ratios;
        for (const auto& r : separation_report.raw)
            if (r.n == n && std::isfinite(r.h_measured) && r.statistic > 0.0)
                ratios.push_back(r.h_measured / r.statistic);
        out.push_back(ratios.empty() ? kNaN : interpolated_quantile(ratios, 0.5));
    }
    return out;
}

}  // namespace mlslab::lab
