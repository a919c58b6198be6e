#include "mlslab/mls/bandwidth.hpp"

#include <cmath>

#include "mlslab/errors.hpp"

namespace mlslab::mls {

Bandwidth Bandwidth::fixed(double h) {
    if (!(h > 0.0)) throw ArgumentError("fixed bandwidth must be positive");
    return Bandwidth(BandwidthRule::Fixed, h);
}

Bandwidth Bandwidth::rate(double c_d) {
    if (!(c_d > 0.0)) throw ArgumentError("bandwidth constant must be positive");
    return Bandwidth(BandwidthRule::Rate, c_d);
}

double Bandwidth::resolve(std::size_t n, int d) const {
    if (rule_ == BandwidthRule::Fixed) return value_;
    if (d < 1) throw ArgumentError("dimension must be positive");
    if (n < 2) throw ArgumentError("rate bandwidth needs n >= 2");
    return value_ * std::pow(std::log(double(n)) / double(n), 1.0 / d);
}

}  // namespace mlslab::mls
