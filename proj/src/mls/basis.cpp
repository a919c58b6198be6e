#include "mlslab/mls/basis.hpp"

#include <cmath>

#include "mlslab/errors.hpp"

namespace mlslab::mls {

double scaled_monomial(const geom::MultiIndex& alpha, const geom::Point& x,
                       const geom::Point& center, double h,
                       const geom::MultiIndex& deriv) {
    if (!(h > 0.0)) throw ArgumentError("basis scale must be positive");
    const int d = alpha.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(center.size()) != d ||
        deriv.dim() != d)
        throw ArgumentError("basis dimension mismatch");
    if (!deriv.leq(alpha)) return 0.0;
    // d^m y^a = a!/(a-m)! * y^{a-m} per axis
    double v = 1.0;
    for (int j = 0; j < d; ++j) {
        const double y = x[j] - center[j];
        for (int m = alpha[j]; m > alpha[j] - deriv[j]; --m) v *= m;
        for (int m = 0; m < alpha[j] - deriv[j]; ++m) v *= y;
    }
    return v / std::pow(h, alpha.order());
}

double scaled_monomial(const geom::MultiIndex& alpha, const geom::Point& x,
                       const geom::Point& center, double h) {
    return scaled_monomial(alpha, x, center, h, geom::MultiIndex::zero(alpha.dim()));
}

}  // namespace mlslab::mls
