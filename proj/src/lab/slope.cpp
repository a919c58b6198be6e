#include "mlslab/lab/slope.hpp"

#include <cmath>

#include "mlslab/errors.hpp"

namespace mlslab::lab {

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    const std::size_t m = points.size();
    if (m < 4) throw ArgumentError("log-log slope fit needs at least 4 points");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw ArgumentError("log-log slope fit needs positive coordinates");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / double(m), my = sy / double(m);
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    if (sxx == 0.0) throw ArgumentError("log-log slope fit needs distinct abscissae");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (const auto& [x, y] : points) {
        const double r = std::log(y) - fit.intercept - fit.slope * std::log(x);
        ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / double(m - 2) / sxx);
    return fit;
}

}  // namespace mlslab::lab
