#pragma once

#include <utility>
#include <vector>

namespace mlslab::lab {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;  // standard error of the slope estimate
};

// Ordinary least squares of log(y) against log(x). Requires at least four
// points with strictly positive coordinates; deterministic.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace mlslab::lab
