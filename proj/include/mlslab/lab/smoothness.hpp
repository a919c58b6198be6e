#pragma once

#include <vector>

#include "mlslab/mls/model.hpp"

namespace mlslab::lab {

struct SmoothnessReport {
    int max_order = 0;        // probed orders are 0 .. max_order - 1
    double grid_step = 0.0;
    std::size_t grid_points = 0;
    int neighbor_set_changes = 0;  // adjacent grid pairs whose neighbor set differs
    int failures = 0;              // grid points where the local fit failed
    std::vector<double> max_abs;   // sup |d^k s| on the transect, k < max_order
    // Divided difference of the top-order derivative, normalized by the grid
    // step: a bound on the next derivative. Stays modest when the surrogate
    // inherits the weight's smoothness; explodes for discontinuous weights.
    double max_normalized_jump = 0.0;
    // Worst disagreement between the centered divided difference of order
    // k - 1 values and the analytic order-k derivative, scaled by
    // max(1, sup |d^k s|), over k = 1 .. max_order - 1.
    double max_divided_diff_mismatch = 0.0;
};

// Continuity probe along an axis-0 transect through the middle of the cloud's
// bounding box (the other coordinates sit at the box midpoint). Evaluates the
// surrogate's derivatives of order < max_order at grid_step spacing and
// reports jump and divided-difference agreement metrics. Failed fits are
// counted, not fatal. Requires 1 <= max_order <= degree + 1.
SmoothnessReport smoothness_probe(const mls::MlsModel& model, int max_order,
                                  double grid_step);

}  // namespace mlslab::lab
