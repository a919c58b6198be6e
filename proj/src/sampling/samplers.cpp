#include "mlslab/sampling/samplers.hpp"

#include "mlslab/errors.hpp"
#include "mlslab/sampling/rng.hpp"

namespace mlslab::sampling {

geom::PointCloud sample_iid(const geom::Domain& domain, const Density& density,
                            std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ArgumentError("sample_iid needs n >= 1");
    density.validate(domain);
    Rng rng(seed);
    geom::Point lo, hi;
    domain.bounding_box(lo, hi);
    const double c_upper = density.c_upper();

    std::vector<geom::Point> pts;
    pts.reserve(n);
    std::size_t proposals = 0;
    while (pts.size() < n) {
        geom::Point p = rng.uniform_in_box(lo, hi);
        ++proposals;
        // check the rate only after enough proposals to be meaningful
        if (proposals >= 10000 && double(pts.size()) < 1e-4 * double(proposals))
            throw ConfigError("rejection sampler acceptance rate below 1e-4");
        if (!domain.contains(p)) continue;
        if (rng.uniform() * c_upper >= density.ratio_to_uniform(p)) continue;
        pts.push_back(std::move(p));
    }
    return geom::PointCloud(std::move(pts));
}

geom::PointCloud sample_manifold(const ReferenceManifold& m, std::size_t n,
                                 std::uint64_t seed,
                                 std::vector<geom::Point>* params) {
    if (n == 0) throw ArgumentError("sample_manifold needs n >= 1");
    return geom::PointCloud(sample_manifold_points(m, n, seed, params));
}

}  // namespace mlslab::sampling
