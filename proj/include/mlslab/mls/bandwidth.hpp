#pragma once

#include <cstddef>

namespace mlslab::mls {

enum class BandwidthRule { Fixed, Rate };

// Fit-time bandwidth: either a fixed h, or the rate rule
// h = C_D * (log(n) / n)^{1/d} (natural log), which tracks the expected
// decay of the fill distance when the true value is not observable.
class Bandwidth {
  public:
    static Bandwidth fixed(double h);
    static Bandwidth rate(double c_d = 1.5);

    BandwidthRule rule() const { return rule_; }
    double fixed_value() const { return value_; }
    double c_d() const { return value_; }

    // Resolved h for a cloud of n points in dimension d; always positive.
    double resolve(std::size_t n, int d) const;

  private:
    Bandwidth(BandwidthRule r, double v) : rule_(r), value_(v) {}
    BandwidthRule rule_;
    double value_;
};

}  // namespace mlslab::mls
