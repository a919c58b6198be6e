#include "mlslab/sampling/density.hpp"

#include <cmath>
#include <numbers>

#include "mlslab/errors.hpp"

namespace mlslab::sampling {

Density Density::uniform() { return Density{}; }

Density Density::bounded_ratio(const std::string& profile) {
    if (profile != "sine-x1")
        throw ConfigError("unknown density profile: " + profile);
    Density d;
    d.kind_ = Kind::BoundedRatio;
    d.profile_ = profile;
    d.c_lower_ = 0.5;
    d.c_upper_ = 1.5;
    return d;
}

double Density::ratio_to_uniform(const geom::Point& x) const {
    if (kind_ == Kind::Uniform) return 1.0;
    return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x[0]);
}

void Density::validate(const geom::Domain& domain, int probe_resolution) const {
    for (const auto& g : domain.candidate_grid(probe_resolution)) {
        const double r = ratio_to_uniform(g);
        if (r < c_lower_ - 1e-12 || r > c_upper_ + 1e-12)
            throw ConfigError("density ratio leaves [c_lower, c_upper] at a probe node");
    }
    // mass check needs real quadrature: a membership-filtered grid carries
    // O(1/resolution) boundary bias on the ball, far above the tolerance
    double mass = 0.0;
    for (const auto& [node, weight] : domain.quadrature())
        mass += weight * ratio_to_uniform(node);
    if (std::fabs(mass / domain.volume() - 1.0) > 1e-6)
        throw ConfigError("density does not integrate to 1 over the domain");
}

}  // namespace mlslab::sampling
