#pragma once

#include <vector>

namespace mlslab::geom {

using Point = std::vector<double>;

}  // namespace mlslab::geom
