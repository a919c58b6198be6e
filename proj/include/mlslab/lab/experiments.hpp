#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlslab/geometry/domain.hpp"
#include "mlslab/lab/test_functions.hpp"
#include "mlslab/mls/bandwidth.hpp"
#include "mlslab/mls/model.hpp"
#include "mlslab/mls/weight_function.hpp"
#include "mlslab/sampling/density.hpp"

namespace mlslab::lab {

enum class ExperimentTarget { Fill, Separation, NeighborCount, LambdaMin, ErrorRate, Smoothness };

std::string target_name(ExperimentTarget t);
ExperimentTarget target_from_name(const std::string& name);

// Everything a rate experiment needs. Trials are keyed by
// (target, n, trial): each draws its sample from an independently derived
// RNG stream, so the raw statistics are bit-identical however the trials are
// scheduled or distributed.
struct ExperimentPlan {
    ExperimentTarget target = ExperimentTarget::Fill;
    std::vector<std::size_t> n_grid;  // strictly increasing, >= 4 for slope fits
    int trials = 1;
    std::uint64_t master_seed = 0;
    geom::Domain domain = geom::Domain::unit_cube(1);
    sampling::Density density = sampling::Density::uniform();
    int degree = 2;
    mls::WeightFunction weight = mls::WeightFunction::smooth_bump();
    mls::Bandwidth bandwidth = mls::Bandwidth::rate();
    // Fraction of failed local fits (over all probe evaluations) tolerated
    // before the run is declared unusable.
    double max_failure_fraction = 0.01;
    // Candidate-grid resolution for fill-distance measurements; 0 picks a
    // resolution that scales like (n / log n)^{1/d}, keeping the relative
    // measurement bias constant along the grid so slopes are unaffected.
    int fill_resolution = 0;
    // Interior probe lattice size per axis for error / lambda experiments.
    int probes_per_axis = 5;
    // Separation trials also measure the fill distance (for the h/delta
    // quasi-uniformity ratio); disable to save the grid scan.
    bool measure_fill_in_separation = true;
};

// Raises ArgumentError unless grid/trials/knobs satisfy the preconditions of
// the given target.
void validate_plan(const ExperimentPlan& plan);

// One (n, trial) measurement.
struct RawRecord {
    std::size_t n = 0;
    int trial = 0;
    double statistic = 0.0;   // h, delta, ratio-to-log-n, max error, min lambda
    double h_measured = 0.0;  // fill distance of the trial cloud (NaN if skipped)
    int failures = 0;         // failed local fits in this trial
    bool degenerate = false;  // statistic unusable for a log fit (e.g. delta = 0)
};

struct RateReport {
    ExperimentTarget target = ExperimentTarget::Fill;
    std::string aggregation;  // "median" | "p10" | "min"
    std::vector<RawRecord> raw;  // deterministic (n, trial) order
    std::vector<std::size_t> n_grid;
    std::vector<double> grid_x;     // abscissa per n: n itself, or median h for error rates
    std::vector<double> aggregate;  // aggregated statistic per n
    std::vector<double> normalized;  // fill only: h * (n / log n)^{1/d}
    bool slope_fitted = false;  // false when a zero/degenerate aggregate blocks the log fit
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    double residual_max = 0.0;  // max |log aggregate - fitted line|
    bool monotone_decreasing = false;  // aggregate strictly decreases along n_grid
    int total_failures = 0;
    std::size_t degenerate_trials = 0;
};

struct NeighborCountReport {
    std::vector<RawRecord> raw;  // statistic = count / log n at the probe
    std::vector<std::size_t> n_grid;
    std::vector<double> mean_count;  // per n, across trials
    double gamma_min = 0.0;  // min and max observed count / log n
    double gamma_max = 0.0;
};

// Quantile of `values` with sorted linear interpolation; q in [0, 1].
double interpolated_quantile(std::vector<double> values, double q);

// Deterministic probe sets. Interior: tensor lattice at cell midpoints,
// restricted to points clear of the boundary. Boundary: cube corners and
// face centers, ball axis poles; empty for periodic domains.
std::vector<geom::Point> interior_probes(const geom::Domain& domain, int per_axis);
std::vector<geom::Point> boundary_probes(const geom::Domain& domain);

// Single-trial measurements, deterministic in (master_seed, target, n, trial).
RawRecord run_trial(const ExperimentPlan& plan, std::size_t n, int trial);
RawRecord run_error_trial(const ExperimentPlan& plan, const TestFunction& f,
                          const mls::DifferentialOperator& q, std::size_t n, int trial);

// Aggregates raw records into a report: groups by n, applies the target's
// aggregation rule (median for fill/error, 10th percentile for separation,
// min for lambda), fits the log-log slope when every aggregate allows it, and
// enforces the failure budget (ConvergenceError above max_failure_fraction).
// `attempts_per_trial` is the number of probe evaluations a trial performed
// (the denominator of the failure fraction); pass 1 for sample statistics.
// Reusable verbatim on records parsed back from a raw CSV.
RateReport assemble_report(const ExperimentPlan& plan, std::vector<RawRecord> raw,
                           int attempts_per_trial);

// Fill distance h_n per trial; slope of the median against n, plus the
// normalized statistic h_n (n / log n)^{1/d} that should stay bounded.
RateReport fill_rate_experiment(const ExperimentPlan& plan);

// Separation delta_n per trial, aggregated by the 10th percentile (the claim
// is a lower bound); duplicate points flag the trial degenerate.
RateReport separation_rate_experiment(const ExperimentPlan& plan);

// Neighbor counts within the rate-rule ball around a fixed probe, as ratios
// to log n, with the empirical [gamma_min, gamma_max] window.
NeighborCountReport neighbor_count_experiment(const ExperimentPlan& plan,
                                              const geom::Point& probe);

// Max |Q s - Q f| over the probe set per trial, paired with the measured fill
// distance; slope of median error against median h. Probes whose fit fails
// are counted and excluded.
RateReport error_rate_experiment(const ExperimentPlan& plan, const TestFunction& f,
                                 const mls::DifferentialOperator& q);

// Smallest gram eigenvalue, minimized over the interior probe grid per trial
// and over trials per n; the stability claim is a uniform positive floor.
// Corner probes are excluded: with a fast-decaying weight they measure
// boundary truncation of the support rather than fit stability.
RateReport lambda_min_experiment(const ExperimentPlan& plan);

// Median over trials of h / delta per n, from a separation report that
// carried fill measurements. Diverges along n for i.i.d. samples: the sanity
// check that quasi-uniformity genuinely fails.
std::vector<double> quasi_uniformity_ratio(const RateReport& separation_report);

}  // namespace mlslab::lab
