#include "mlslab/mls/taylor_jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "mlslab/errors.hpp"

namespace mlslab::mls {

JetLayout::JetLayout(int d, int order) : d_(d), order_(order) {
    if (d < 1 || order < 0) throw ArgumentError("jet layout needs d >= 1, order >= 0");
    indices_ = geom::enumerate_multi_indices(d, order);
    std::map<std::vector<int>, std::uint32_t> pos;
    for (std::uint32_t k = 0; k < indices_.size(); ++k) pos[indices_[k].entries()] = k;
    for (std::uint32_t a = 0; a < indices_.size(); ++a)
        for (std::uint32_t b = 0; b < indices_.size(); ++b) {
            if (indices_[a].order() + indices_[b].order() > order) continue;
            const auto target = pos.at(indices_[a].plus(indices_[b]).entries());
            products_.push_back({a, b, target});
        }
}

const JetLayout& JetLayout::get(int d, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{d, order}];
    if (!slot) slot.reset(new JetLayout(d, order));
    return *slot;
}

std::size_t JetLayout::position(const geom::MultiIndex& alpha) const {
    for (std::size_t k = 0; k < indices_.size(); ++k)
        if (indices_[k] == alpha) return k;
    throw ArgumentError("multi-index outside jet layout: " + alpha.to_string());
}

TaylorJet& TaylorJet::operator+=(const TaylorJet& o) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

TaylorJet& TaylorJet::operator-=(const TaylorJet& o) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

TaylorJet& TaylorJet::scale(double c) {
    for (double& v : coeffs_) v *= c;
    return *this;
}

TaylorJet TaylorJet::times(const TaylorJet& o) const {
    TaylorJet out(*layout_);
    for (const auto& t : layout_->product_terms())
        out.coeffs_[t.target] += coeffs_[t.a] * o.coeffs_[t.b];
    return out;
}

TaylorJet TaylorJet::compose_series(const std::vector<double>& series) const {
    TaylorJet x(*this);
    x.coeffs_[0] = 0.0;  // nilpotent part
    TaylorJet out(*layout_);
    for (std::size_t k = series.size(); k-- > 0;) {
        out = out.times(x);
        out.coeffs_[0] += series[k];
    }
    return out;
}

double TaylorJet::derivative(const geom::MultiIndex& gamma) const {
    return double(gamma.factorial()) * coeffs_[layout_->position(gamma)];
}

std::vector<double> exp_series(double f0, int order) {
    std::vector<double> c(order + 1);
    c[0] = std::exp(f0);
    for (int k = 1; k <= order; ++k) c[k] = c[k - 1] / k;
    return c;
}

std::vector<double> recip_series(double f0, int order) {
    if (f0 == 0.0) throw ArgumentError("reciprocal series at zero");
    std::vector<double> c(order + 1);
    c[0] = 1.0 / f0;
    for (int k = 1; k <= order; ++k) c[k] = -c[k - 1] / f0;
    return c;
}

std::vector<double> sqrt_series(double f0, int order) {
    if (!(f0 > 0.0)) throw ArgumentError("sqrt series needs a positive base");
    // d^k/dx^k sqrt(x) / k! = binom(1/2, k) x^{1/2 - k}
    std::vector<double> c(order + 1);
    c[0] = std::sqrt(f0);
    double binom = 1.0;  // binom(1/2, k)
    for (int k = 1; k <= order; ++k) {
        binom *= (0.5 - (k - 1)) / k;
        c[k] = binom * c[0] / std::pow(f0, k);
    }
    return c;
}

}  // namespace mlslab::mls
