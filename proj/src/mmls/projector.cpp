#include "mlslab/mmls/projector.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "mlslab/errors.hpp"
#include "mlslab/mls/basis.hpp"

namespace mlslab::mmls {

geom::Point VectorPolynomial::eval(const geom::Point& x) const {
    const int d = basis.empty() ? 0 : basis.front().dim();
    if (static_cast<int>(x.size()) != d)
        throw ArgumentError("frame coordinate dimension mismatch");
    const geom::Point center(x.size(), 0.0);
    geom::Point out(coefficients.cols(), 0.0);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const double b = mls::scaled_monomial(basis[a], x, center, bandwidth);
        for (Eigen::Index j = 0; j < coefficients.cols(); ++j)
            out[j] += coefficients(static_cast<Eigen::Index>(a), j) * b;
    }
    return out;
}

geom::Point VectorPolynomial::value_at_origin() const {
    geom::Point out(coefficients.cols());
    for (Eigen::Index j = 0; j < coefficients.cols(); ++j) out[j] = coefficients(0, j);
    return out;
}

VectorPolynomial local_poly_fit(const LocalFrame& frame, const geom::PointCloud& samples,
                                const MmlsConfig& cfg) {
    validate_config(cfg, samples);
    const int D = samples.dim();
    const int d = cfg.intrinsic_dim;
    if (static_cast<int>(frame.origin.size()) != D || frame.basis.rows() != D ||
        frame.basis.cols() != d)
        throw ArgumentError("frame does not match the cloud and configuration");
    const std::size_t n = samples.size();
    const double h = cfg.resolved_bandwidth(n);

    const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(frame.origin.data(), D);
    // candidate cutoff in ambient space: the weights act on frame
    // coordinates, so without it a far sheet of the manifold could project
    // into the chart and receive full weight
    const auto candidates = samples.range_query(frame.origin, cfg.resolved_mu(n));

    std::vector<geom::Point> xs;  // frame coordinates, per kept sample
    std::vector<double> ws;
    std::vector<std::size_t> kept;
    for (std::size_t i : candidates) {
        const Eigen::VectorXd v =
            Eigen::Map<const Eigen::VectorXd>(samples[i].data(), D) - q;
        const Eigen::VectorXd x = frame.basis.transpose() * v;
        geom::Point xp(x.data(), x.data() + d);
        const double w = cfg.fit_weight.value(xp, h);
        if (w <= 0.0) continue;
        xs.push_back(std::move(xp));
        ws.push_back(w);
        kept.push_back(i);
    }

    const auto basis = geom::enumerate_multi_indices(d, cfg.degree);
    const std::size_t na = basis.size();
    if (kept.size() < na)
        throw InsufficientDataError("not enough positive-weight samples in the chart",
                                    kept.size());

    const geom::Point center(d, 0.0);
    Eigen::MatrixXd bvals(kept.size(), na);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t a = 0; a < na; ++a)
            bvals(i, a) = mls::scaled_monomial(basis[a], xs[i], center, h);

    // one gram, D right-hand sides; neighbor sums in ascending index order
    Eigen::MatrixXd gram(na, na);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = a; b < na; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < kept.size(); ++i)
                s += ws[i] * bvals(i, a) * bvals(i, b);
            gram(a, b) = gram(b, a) = s;
        }
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(na, D);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const geom::Point& p = samples[kept[i]];
        for (std::size_t a = 0; a < na; ++a) {
            const double wb = ws[i] * bvals(i, a);
            for (int j = 0; j < D; ++j) rhs(a, j) += wb * p[j];
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double lmin = es.eigenvalues()(0);
    const double lmax = es.eigenvalues()(static_cast<Eigen::Index>(na) - 1);
    if (lmin < cfg.epsilon_lambda * std::max(1.0, lmax))
        throw IllConditionedError("fit gram is numerically rank deficient", lmin,
                                  kept.size());
    const auto apply_inverse = [&](const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
        return es.eigenvectors() *
               (es.eigenvalues().cwiseInverse().asDiagonal() *
                (es.eigenvectors().transpose() * m));
    };
    Eigen::MatrixXd coeff = apply_inverse(rhs);
    coeff += apply_inverse(rhs - gram * coeff);  // one refinement pass

    VectorPolynomial poly;
    poly.basis = basis;
    poly.coefficients = std::move(coeff);
    poly.bandwidth = h;
    return poly;
}

geom::Point mmls_project(const geom::Point& r, const geom::PointCloud& samples,
                         const MmlsConfig& cfg) {
    const LocalFrame frame = find_local_frame(r, samples, cfg);
    return local_poly_fit(frame, samples, cfg).value_at_origin();
}

geom::PointCloud reconstruct_manifold(const geom::PointCloud& samples,
                                      const geom::PointCloud& probes, const MmlsConfig& cfg,
                                      std::vector<ProjectionDiagnostics>* diagnostics,
                                      double max_failure_fraction) {
    if (diagnostics) diagnostics->clear();
    if (probes.empty()) return geom::PointCloud();
    validate_config(cfg, samples);
    if (probes.dim() != samples.dim()) throw ArgumentError("probe dimension mismatch");
    if (!(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0))
        throw ArgumentError("failure budget must lie in [0, 1]");

    std::vector<geom::Point> out;
    out.reserve(probes.size());
    std::size_t failures = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        ProjectionDiagnostics diag;
        diag.probe_index = i;
        diag.residual = std::numeric_limits<double>::quiet_NaN();
        try {
            const LocalFrame frame = find_local_frame(probes[i], samples, cfg);
            diag.iterations = frame.iterations;
            diag.residual = frame.residual;
            out.push_back(local_poly_fit(frame, samples, cfg).value_at_origin());
        } catch (const std::runtime_error& err) {
            // per-probe failures (infeasible, non-converged, too sparse,
            // rank deficient) are excluded and reported; argument errors
            // still propagate
            ++failures;
            diag.failure = err.what();
        }
        if (diagnostics) diagnostics->push_back(std::move(diag));
    }

    const double fraction = double(failures) / double(probes.size());
    if (fraction > max_failure_fraction)
        throw ConvergenceError("projection failures exceed the failure budget", fraction);
    return out.empty() ? geom::PointCloud() : geom::PointCloud(std::move(out));
}

}  // namespace mlslab::mmls
