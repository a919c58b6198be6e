#include "mlslab/mmls/frame.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "mlslab/errors.hpp"
#include "mlslab/geometry/multi_index.hpp"

namespace mlslab::mmls {

namespace {

Eigen::VectorXd to_vec(const geom::Point& p) {
    return Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

geom::Point to_point(const Eigen::VectorXd& v) {
    return geom::Point(v.data(), v.data() + v.size());
}

// first component clearly away from zero decides the sign; unit columns
// always have one of magnitude >= 1/sqrt(D)
void fix_column_signs(Eigen::MatrixXd& e) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
        for (Eigen::Index rrow = 0; rrow < e.rows(); ++rrow) {
            if (std::fabs(e(rrow, c)) > 1e-12) {
                if (e(rrow, c) < 0.0) e.col(c) = -e.col(c);
                break;
            }
        }
    }
}

struct Neighborhood {
    std::vector<std::size_t> idx;
    std::vector<double> w;
    double wsum = 0.0;
};

Neighborhood weigh_neighbors(const geom::PointCloud& samples, const geom::Point& q,
                             const mls::WeightFunction& weight, double h) {
    Neighborhood nb;
    nb.idx = samples.range_query(q, weight.support_scale() * h);
    nb.w.reserve(nb.idx.size());
    geom::Point diff(q.size());
    for (std::size_t i : nb.idx) {
        const geom::Point& p = samples[i];
        for (std::size_t j = 0; j < q.size(); ++j) diff[j] = p[j] - q[j];
        const double wi = weight.value(diff, h);
        nb.w.push_back(wi);
        nb.wsum += wi;
    }
    return nb;
}

// sum_i w_i |(I - E E^T)(r_i - q)|^2 with weights taken at q
double objective(const geom::PointCloud& samples, const Neighborhood& nb,
                 const Eigen::VectorXd& q, const Eigen::MatrixXd& e) {
    double j = 0.0;
    for (std::size_t k = 0; k < nb.idx.size(); ++k) {
        const Eigen::VectorXd v = to_vec(samples[nb.idx[k]]) - q;
        j += nb.w[k] * (v.squaredNorm() - (e.transpose() * v).squaredNorm());
    }
    return j;
}

}  // namespace

double MmlsConfig::resolved_bandwidth(std::size_t n) const {
    return bandwidth.resolve(n, intrinsic_dim);
}

double MmlsConfig::resolved_mu(std::size_t n) const {
    return mu_factor * resolved_bandwidth(n);
}

std::size_t MmlsConfig::basis_size() const {
    return geom::binomial(std::uint64_t(intrinsic_dim + degree), std::uint64_t(intrinsic_dim));
}

void validate_config(const MmlsConfig& cfg, const geom::PointCloud& samples) {
    if (samples.empty()) throw ArgumentError("sample cloud is empty");
    if (cfg.intrinsic_dim < 1) throw ArgumentError("intrinsic dimension must be positive");
    if (cfg.degree < 0) throw ArgumentError("degree must be non-negative");
    const int D = samples.dim();
    if (cfg.ambient_dim != 0 && cfg.ambient_dim != D)
        throw ArgumentError("configured ambient dimension does not match the cloud");
    if (cfg.intrinsic_dim >= D)
        throw ArgumentError("intrinsic dimension must be below the ambient dimension");
    if (cfg.mu_factor < 1.0)
        throw ArgumentError("proximity radius must cover at least one bandwidth");
    if (!(cfg.frame_tolerance > 0.0)) throw ArgumentError("frame tolerance must be positive");
    if (cfg.max_frame_iterations < 1) throw ArgumentError("iteration budget must be positive");
    if (!(cfg.epsilon_lambda > 0.0))
        throw ArgumentError("eigenvalue floor must be positive");
}

LocalFrame find_local_frame(const geom::Point& r, const geom::PointCloud& samples,
                            const MmlsConfig& cfg) {
    validate_config(cfg, samples);
    const int D = samples.dim();
    const int d = cfg.intrinsic_dim;
    if (static_cast<int>(r.size()) != D) throw ArgumentError("query dimension mismatch");
    const std::size_t n = samples.size();
    const double h = cfg.resolved_bandwidth(n);
    const double mu = cfg.resolved_mu(n);

    // a feasible frame needs an origin within mu of r that still sees a
    // sample; the nearest sample decides that, and seeds the iteration
    double nearest = 0.0;
    const std::size_t seed_index = samples.tree().nearest(r, &nearest);
    if (nearest > mu + cfg.frame_weight.support_scale() * h)
        throw FeasibilityError("no sample within reach of the query");

    const Eigen::VectorXd rv = to_vec(r);
    Eigen::VectorXd q = to_vec(samples[seed_index]);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(D, d);
    Neighborhood nb = weigh_neighbors(samples, to_point(q), cfg.frame_weight, h);
    double j_prev = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (int it = 1; it <= cfg.max_frame_iterations; ++it) {
        if (nb.wsum <= 0.0)
            throw FeasibilityError("frame origin lost all weighted neighbors");

        // basis step: top-d eigenvectors of the weighted second moment at q
        Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(D, D);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(D);
        for (std::size_t k = 0; k < nb.idx.size(); ++k) {
            const Eigen::VectorXd v = to_vec(samples[nb.idx[k]]) - q;
            moment.noalias() += nb.w[k] * v * v.transpose();
            mean.noalias() += nb.w[k] * to_vec(samples[nb.idx[k]]);
        }
        mean /= nb.wsum;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moment);
        Eigen::MatrixXd e_new(D, d);
        for (int c = 0; c < d; ++c) e_new.col(c) = es.eigenvectors().col(D - 1 - c);
        fix_column_signs(e_new);

        // origin step: weighted mean moved along the span, so r - q_new is
        // exactly perpendicular to it
        const Eigen::VectorXd q_new = mean + e_new * (e_new.transpose() * (rv - mean));

        Neighborhood nb_new = weigh_neighbors(samples, to_point(q_new), cfg.frame_weight, h);
        const double j_new = objective(samples, nb_new, q_new, e_new);
        if (j_new > j_prev) break;  // weight refresh noise: keep the previous frame

        const double move = (q_new - q).norm();
        q = q_new;
        e = e_new;
        nb = std::move(nb_new);
        iterations = it;
        const bool stalled = j_new >= j_prev * (1.0 - 1e-14);
        j_prev = j_new;
        if (move < cfg.frame_tolerance || stalled) break;
        if (it == cfg.max_frame_iterations)
            throw ConvergenceError("frame iteration budget exhausted", j_prev);
    }

    if ((q - rv).norm() > mu)
        throw ConvergenceError("frame origin converged outside the proximity ball", j_prev);
    const std::size_t fit_support =
        samples.range_count(to_point(q), cfg.fit_weight.support_scale() * h);
    if (fit_support < cfg.basis_size())
        throw InsufficientDataError("frame neighborhood cannot support the polynomial fit",
                                    fit_support);

    LocalFrame frame;
    frame.origin = to_point(q);
    frame.basis = e;
    frame.residual = j_prev;
    frame.iterations = iterations;
    return frame;
}

}  // namespace mlslab::mmls
