#pragma once

#include <cstdint>

#include "mlslab/geometry/domain.hpp"
#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/sampling/density.hpp"
#include "mlslab/sampling/manifold.hpp"

namespace mlslab::sampling {

// n independent draws from `density` restricted to `domain`, by rejection
// from the uniform law on the bounding box. Deterministic in `seed`.
// Throws ConfigError if the running acceptance rate degenerates.
geom::PointCloud sample_iid(const geom::Domain& domain, const Density& density,
                            std::size_t n, std::uint64_t seed);

// n independent draws from the uniform surface measure of `m`, as a cloud of
// ambient points. Optional parameter coordinates per sample via `params`.
geom::PointCloud sample_manifold(const ReferenceManifold& m, std::size_t n,
                                 std::uint64_t seed,
                                 std::vector<geom::Point>* params = nullptr);

}  // namespace mlslab::sampling
