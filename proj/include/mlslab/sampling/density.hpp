#pragma once

#include <string>

#include "mlslab/geometry/domain.hpp"

namespace mlslab::sampling {

// Sampling density on a domain, restricted to the bounded-ratio class:
// c_lower * uniform <= p <= c_upper * uniform pointwise. The uniform density
// has ratio identically 1. One smooth non-uniform profile ships:
//   "sine-x1": ratio(x) = 1 + 0.5*sin(2*pi*x_1),
// which integrates to exactly 1 against the uniform measure on all three
// domain shapes (zero-mean sine over a full period / symmetric ball).
class Density {
  public:
    enum class Kind { Uniform, BoundedRatio };

    static Density uniform();
    static Density bounded_ratio(const std::string& profile);

    Kind kind() const { return kind_; }
    const std::string& profile() const { return profile_; }
    double c_lower() const { return c_lower_; }
    double c_upper() const { return c_upper_; }

    // p(x) / uniform(x); in [c_lower, c_upper].
    double ratio_to_uniform(const geom::Point& x) const;

    // Probe-grid check of the bounded-ratio envelope and of the integral
    // (equal-weight quadrature over the candidate grid must give 1 +- 1e-6).
    // Throws ConfigError on violation.
    void validate(const geom::Domain& domain, int probe_resolution = 101) const;

  private:
    Kind kind_ = Kind::Uniform;
    std::string profile_;
    double c_lower_ = 1.0;
    double c_upper_ = 1.0;
};

}  // namespace mlslab::sampling
