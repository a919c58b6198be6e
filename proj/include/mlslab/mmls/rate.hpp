#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlslab/lab/experiments.hpp"
#include "mlslab/mmls/projector.hpp"
#include "mlslab/sampling/manifold.hpp"

namespace mlslab::mmls {

// Convergence of the manifold projection. Per (n, trial): draw n uniform
// samples of the manifold, project every sample, and record the maximum
// exact distance of the projected points to the manifold (the one-sided
// Hausdorff term; the reverse term is bounded by the sample fill distance,
// which is recorded as h_measured per trial). Aggregates the per-n medians
// and fits the log-log slope of error against measured fill distance; the
// expected slope is degree + 1. When every aggregate sits at rounding level
// (a flat manifold reproduced exactly) the slope fit is skipped.
// Trials are keyed by (n, trial) through their own derived RNG streams, so
// records are bit-identical regardless of scheduling.
lab::RateReport mmls_rate_experiment(const sampling::ReferenceManifold& manifold,
                                     const MmlsConfig& cfg,
                                     const std::vector<std::size_t>& n_grid, int trials,
                                     std::uint64_t master_seed);

}  // namespace mlslab::mmls
