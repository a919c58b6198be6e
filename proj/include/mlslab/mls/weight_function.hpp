#pragma once

#include <string>
#include <vector>

#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point.hpp"

namespace mlslab::mls {

enum class WeightProfile {
    SmoothBump,    // exp(1/(|t/s|^2 - 1)) inside |t| < s: compactly supported C-infinity
    WendlandLike,  // (1 - r)^4 (4r + 1), r = |t/s|: polynomial, C^2 smoothness
    Indicator,     // 1 inside the support (test-only: deliberately discontinuous)
};

// Radial weight theta_h(t) = Phi(t / h), Phi supported in the ball of radius
// `support_scale`. theta_h and every requested derivative vanish identically
// for |t| >= support_scale * h. Derivatives are evaluated analytically
// through truncated Taylor expansions of the radial composition; the
// wendland-like profile is only C^2 at the origin, where third- and
// fourth-order values are reported from the even polynomial part (the odd
// |t|^3, |t|^5 terms have no classical derivative there).
class WeightFunction {
  public:
    static WeightFunction smooth_bump(double support_scale = 1.0);
    static WeightFunction wendland_like(double support_scale = 1.0);
    static WeightFunction indicator(double support_scale = 1.0);
    static WeightFunction from_name(const std::string& profile, double support_scale = 1.0);

    WeightProfile profile() const { return profile_; }
    double support_scale() const { return s_; }
    double bandwidth() const { return h_; }
    bool has_bandwidth() const { return h_ > 0.0; }
    // Same profile and scale, bandwidth rebound (models resolve h at fit time).
    WeightFunction with_bandwidth(double h) const;

    // theta_h(t); fast path without jet machinery.
    double value(const geom::Point& t, double h) const;

    // All derivatives d^gamma theta_h(t) for |gamma| <= order, written to
    // `out` in the graded-lex layout of JetLayout::get(d, order).
    void derivatives(const geom::Point& t, double h, int order,
                     std::vector<double>& out) const;

  private:
    WeightFunction(WeightProfile p, double s);
    WeightProfile profile_;
    double s_;
    double h_ = 0.0;
};

// d^deriv theta_h(t) for the weight's resolved bandwidth; |deriv| <= 4.
double weight_eval(const WeightFunction& w, const geom::Point& t,
                   const geom::MultiIndex& deriv);

}  // namespace mlslab::mls
