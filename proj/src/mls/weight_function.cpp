#include "mlslab/mls/weight_function.hpp"

#include <cmath>

#include "mlslab/errors.hpp"
#include "mlslab/mls/taylor_jet.hpp"

namespace mlslab::mls {

WeightFunction::WeightFunction(WeightProfile p, double s) : profile_(p), s_(s) {
    if (!(s > 0.0)) throw ArgumentError("support scale must be positive");
}

WeightFunction WeightFunction::smooth_bump(double s) {
    return WeightFunction(WeightProfile::SmoothBump, s);
}
WeightFunction WeightFunction::wendland_like(double s) {
    return WeightFunction(WeightProfile::WendlandLike, s);
}
WeightFunction WeightFunction::indicator(double s) {
    return WeightFunction(WeightProfile::Indicator, s);
}

WeightFunction WeightFunction::from_name(const std::string& profile, double s) {
    if (profile == "smooth-bump") return smooth_bump(s);
    if (profile == "wendland-like") return wendland_like(s);
    if (profile == "indicator") return indicator(s);
    throw ConfigError("unknown weight profile: " + profile);
}

WeightFunction WeightFunction::with_bandwidth(double h) const {
    if (!(h > 0.0)) throw ArgumentError("bandwidth must be positive");
    WeightFunction w(*this);
    w.h_ = h;
    return w;
}

namespace {

// squared scaled radius |t / (s h)|^2
double rho_of(const geom::Point& t, double sh) {
    double rho = 0.0;
    for (double c : t) {
        const double u = c / sh;
        rho += u * u;
    }
    return rho;
}

// jet of rho(delta) = |(t + delta) / (s h)|^2: an exact degree-2 polynomial
TaylorJet rho_jet(const JetLayout& layout, const geom::Point& t, double sh) {
    TaylorJet j(layout);
    const double inv2 = 1.0 / (sh * sh);
    const int d = layout.dim();
    for (int a = 0; a < d; ++a) {
        j[0] += t[a] * t[a] * inv2;
        if (layout.order() >= 1)
            j[layout.position(geom::MultiIndex::axis(d, a, 1))] += 2.0 * t[a] * inv2;
        if (layout.order() >= 2)
            j[layout.position(geom::MultiIndex::axis(d, a, 2))] += inv2;
    }
    return j;
}

}  // namespace

double WeightFunction::value(const geom::Point& t, double h) const {
    if (!(h > 0.0)) throw ArgumentError("bandwidth must be positive");
    const double rho = rho_of(t, s_ * h);
    if (rho >= 1.0) return 0.0;
    switch (profile_) {
        case WeightProfile::SmoothBump:
            return std::exp(1.0 / (rho - 1.0));
        case WeightProfile::WendlandLike: {
            const double r = std::sqrt(rho);
            const double q = 1.0 - r;
            return q * q * q * q * (4.0 * r + 1.0);
        }
        case WeightProfile::Indicator:
            return 1.0;
    }
    return 0.0;
}

void WeightFunction::derivatives(const geom::Point& t, double h, int order,
                                 std::vector<double>& out) const {
    if (!(h > 0.0)) throw ArgumentError("bandwidth must be positive");
    const int d = static_cast<int>(t.size());
    const JetLayout& layout = JetLayout::get(d, order);
    out.assign(layout.size(), 0.0);
    const double rho0 = rho_of(t, s_ * h);
    if (rho0 >= 1.0) return;  // outside or on the support boundary: all zero
    if (profile_ == WeightProfile::Indicator) {
        out[0] = 1.0;  // derivatives of the flat interior are zero
        return;
    }

    const TaylorJet rho = rho_jet(layout, t, s_ * h);
    TaylorJet phi(layout);
    if (profile_ == WeightProfile::SmoothBump) {
        // exp(1/(rho - 1)): reciprocal series about rho0 - 1, then exp
        TaylorJet r(rho);
        r[0] -= 1.0;
        const TaylorJet w = r.compose_series(recip_series(rho0 - 1.0, order));
        phi = w.compose_series(exp_series(w.constant_term(), order));
    } else {
        // (1-r)^4 (4r+1) = 1 - 10 rho - 15 rho^2 + r (20 rho + 4 rho^2)
        const TaylorJet rho2 = rho.times(rho);
        phi[0] = 1.0;
        TaylorJet even(rho);
        even.scale(-10.0);
        phi += even;
        even = rho2;
        even.scale(-15.0);
        phi += even;
        if (rho0 > 1e-250) {
            const TaylorJet r = rho.compose_series(sqrt_series(rho0, order));
            TaylorJet odd(rho);
            odd.scale(20.0);
            TaylorJet odd2(rho2);
            odd2.scale(4.0);
            odd += odd2;
            phi += r.times(odd);
        }
        // at the exact origin the odd part contributes nothing through
        // order 2; higher orders have no classical value there and the even
        // polynomial part is reported (see header)
    }
    for (std::size_t k = 0; k < layout.size(); ++k)
        out[k] = double(layout.indices()[k].factorial()) * phi[k];
}

double weight_eval(const WeightFunction& w, const geom::Point& t,
                   const geom::MultiIndex& deriv) {
    if (!w.has_bandwidth()) throw ArgumentError("weight bandwidth not resolved");
    if (static_cast<int>(t.size()) != deriv.dim())
        throw ArgumentError("offset and derivative dimension mismatch");
    if (deriv.order() > 4)
        throw ArgumentError("weight derivatives supported up to total order 4");
    if (deriv.order() == 0) return w.value(t, w.bandwidth());
    std::vector<double> derivs;
    w.derivatives(t, w.bandwidth(), deriv.order(), derivs);
    const JetLayout& layout = JetLayout::get(deriv.dim(), deriv.order());
    return derivs[layout.position(deriv)];
}

}  // namespace mlslab::mls
