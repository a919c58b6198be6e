#pragma once

#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point.hpp"

namespace mlslab::mls {

// d^deriv [ ((x - center)^alpha) / h^{|alpha|} ] evaluated at x.
// Zero whenever deriv exceeds alpha in any component.
double scaled_monomial(const geom::MultiIndex& alpha, const geom::Point& x,
                       const geom::Point& center, double h,
                       const geom::MultiIndex& deriv);

// Value-only overload (deriv = 0).
double scaled_monomial(const geom::MultiIndex& alpha, const geom::Point& x,
                       const geom::Point& center, double h);

}  // namespace mlslab::mls
