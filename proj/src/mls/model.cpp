#include "mlslab/mls/model.hpp"

#include <cmath>

#include "mlslab/errors.hpp"
#include "mlslab/mls/basis.hpp"
#include "mlslab/mls/taylor_jet.hpp"

namespace mlslab::mls {

double MlsModel::resolved_bandwidth() const {
    return bandwidth.resolve(cloud.size(), cloud.dim());
}

double MlsModel::support_radius() const {
    return weight.support_scale() * resolved_bandwidth();
}

std::size_t MlsModel::basis_size() const {
    return geom::binomial(std::uint64_t(cloud.dim() + degree), std::uint64_t(cloud.dim()));
}

DifferentialOperator DifferentialOperator::identity(int d) {
    return {{{geom::MultiIndex::zero(d), 1.0}}};
}

DifferentialOperator DifferentialOperator::partial(const geom::MultiIndex& alpha,
                                                   double coeff) {
    return {{{alpha, coeff}}};
}

DifferentialOperator DifferentialOperator::laplacian(int d) {
    DifferentialOperator op;
    for (int j = 0; j < d; ++j) op.terms.push_back({geom::MultiIndex::axis(d, j, 2), 1.0});
    return op;
}

int DifferentialOperator::order() const {
    int m = -1;
    for (const auto& [alpha, q] : terms)
        if (q != 0.0) m = std::max(m, alpha.order());
    if (m < 0) throw ArgumentError("differential operator has no nonzero term");
    return m;
}

namespace {

using LongVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LongMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

void check_model(const MlsModel& model, const geom::Point& query, bool need_values) {
    if (model.cloud.empty()) throw InsufficientDataError("empty point cloud", 0);
    if (model.degree < 0) throw ArgumentError("degree must be nonnegative");
    if (static_cast<int>(query.size()) != model.cloud.dim())
        throw ArgumentError("query dimension mismatch");
    if (need_values && model.values.size() != model.cloud.size())
        throw ArgumentError("one value per sample point required");
}

// Shared state of one local fit: neighbors, weights, basis rows, the gram
// matrix and its eigendecomposition (of gram + ridge*I when the fallback
// engages), and eta.
struct Workspace {
    double h = 0.0;
    double norm = 1.0;
    std::vector<std::size_t> neighbors;
    std::vector<geom::MultiIndex> basis;
    Eigen::MatrixXd B;     // basis_size x neighbor_count, B(a,i) = p_a(x_i)
    Eigen::VectorXd wraw;  // theta_h(x_i - query), unnormalized
    Eigen::MatrixXd gram;
    Eigen::MatrixXd factored;  // the matrix the eigensolver ran on (ridged or not)
    LongMat graml;             // extended-precision shadow of gram
    LongMat factoredl;         // extended-precision shadow of factored
    double lambda = 0.0;
    bool ridged = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

    Eigen::VectorXd apply_inverse(const Eigen::VectorXd& rhs) const {
        return es.eigenvectors() *
               (es.eigenvalues().cwiseInverse().asDiagonal() *
                (es.eigenvectors().transpose() * rhs));
    }

    // One step of iterative refinement: the residual against the original
    // entries recovers the digits the factorization loses, which matters for
    // the h^{-|gamma|}-scaled derivative solves.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd x = apply_inverse(rhs);
        x += apply_inverse(rhs - factored * x);
        return x;
    }

    // Extended-precision variant for the eta-jet recursion. The shape
    // derivative sums cancel down to this residual's last digit, and a
    // double-rounded solution alone leaves eps * |eta| of noise behind,
    // which the h^{-|gamma|} scales push up to ~1e-10 absolute.
    LongVec solve_extended(const LongVec& rhs) const {
        const Eigen::VectorXd x = solve(rhs.cast<double>());
        LongVec refined = x.cast<long double>();
        const LongVec r = rhs - factoredl * refined;
        refined += apply_inverse(r.cast<double>()).cast<long double>();
        return refined;
    }
};

// Assembly shared by assemble_gram and local_fit. Throws only the
// empty-neighborhood error; callers add their own preconditions.
Workspace assemble(const MlsModel& model, const geom::Point& query) {
    Workspace ws;
    ws.h = model.resolved_bandwidth();
    const double radius = model.weight.support_scale() * ws.h;
    ws.neighbors = model.cloud.range_query(query, radius);
    if (ws.neighbors.empty())
        throw InsufficientDataError("no sample points inside the weight support", 0);
    const std::size_t nb = ws.neighbors.size();
    ws.norm = model.normalization == Normalization::PerCount ? 1.0 / double(nb) : 1.0;
    ws.basis = geom::enumerate_multi_indices(model.cloud.dim(), model.degree);
    const std::size_t na = ws.basis.size();

    ws.B.resize(na, nb);
    ws.wraw.resize(nb);
    geom::Point t(query.size());
    for (std::size_t i = 0; i < nb; ++i) {
        const geom::Point& xi = model.cloud[ws.neighbors[i]];
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = xi[j] - query[j];
        ws.wraw(i) = model.weight.value(t, ws.h);
        for (std::size_t a = 0; a < na; ++a)
            ws.B(a, i) = scaled_monomial(ws.basis[a], xi, query, ws.h);
    }
    // upper triangle summed in ascending neighbor order, mirrored exactly;
    // the extended-precision shadow feeds the derivative solves
    ws.gram.resize(na, na);
    ws.graml.resize(na, na);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = a; b < na; ++b) {
            long double s = 0.0L;
            for (std::size_t i = 0; i < nb; ++i)
                s += static_cast<long double>(ws.wraw(i)) * ws.B(a, i) * ws.B(b, i);
            ws.graml(a, b) = ws.graml(b, a) = static_cast<long double>(ws.norm) * s;
            ws.gram(a, b) = ws.gram(b, a) = double(ws.graml(a, b));
        }
    return ws;
}

// Eigendecompose, enforce the conditioning floor (or engage the ridge
// fallback), and solve for eta.
void factorize(const MlsModel& model, Workspace& ws) {
    if (ws.neighbors.size() < ws.basis.size())
        throw InsufficientDataError("fewer neighbors than basis functions",
                                    ws.neighbors.size());
    ws.es.compute(ws.gram);
    ws.lambda = ws.es.eigenvalues()(0);
    ws.factored = ws.gram;
    ws.factoredl = ws.graml;
    if (ws.lambda < model.epsilon_lambda) {
        if (!(model.ridge > 0.0))
            throw IllConditionedError("gram smallest eigenvalue below floor",
                                      ws.lambda, ws.neighbors.size());
        ws.ridged = true;
        ws.factoredl.diagonal().array() += static_cast<long double>(model.ridge);
        ws.factored = ws.factoredl.cast<double>();
        ws.es.compute(ws.factored);
    }
}

Eigen::VectorXd eta_of(const Workspace& ws) {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(ws.basis.size());
    e0(0) = 1.0;
    return ws.solve(e0);
}

std::vector<double> shapes_of(const Workspace& ws, const Eigen::VectorXd& eta) {
    std::vector<double> a(ws.neighbors.size());
    for (std::size_t i = 0; i < ws.neighbors.size(); ++i)
        a[i] = ws.norm * ws.wraw(i) * ws.B.col(i).dot(eta);
    return a;
}

std::size_t basis_position(const std::vector<geom::MultiIndex>& basis,
                           const geom::MultiIndex& alpha) {
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k] == alpha) return k;
    throw ArgumentError("multi-index outside the basis: " + alpha.to_string());
}

// Shape-function derivatives up to total order L at the query, all at once.
// Differentiating gram(x) eta(x) = p(x) at the query gives, per gamma,
//   gram * d^gamma eta = d^gamma p - sum_{0<zeta<=gamma} C(gamma,zeta)
//                        d^zeta gram * d^{gamma-zeta} eta,
// solved in graded order so every right-hand side is already available.
// The basis is centered at the query, so d^gamma p is the single entry
// gamma!/h^{|gamma|}, and d^zeta gram only differentiates the weights.
struct DerivativePlan {
    const JetLayout* layout = nullptr;
    std::vector<LongMat> gram_derivs;  // per layout position; [0] unused
    std::vector<LongVec> eta_derivs;   // per layout position
    std::vector<std::vector<double>> wderivs;  // per neighbor, per position
};

DerivativePlan build_plan(const MlsModel& model, const geom::Point& query,
                          const Workspace& ws, const Eigen::VectorXd& eta, int L) {
    DerivativePlan plan;
    const int d = model.cloud.dim();
    plan.layout = &JetLayout::get(d, L);
    const auto& gammas = plan.layout->indices();
    const std::size_t na = ws.basis.size();
    const std::size_t nb = ws.neighbors.size();

    plan.wderivs.resize(nb);
    geom::Point t(query.size());
    for (std::size_t i = 0; i < nb; ++i) {
        const geom::Point& xi = model.cloud[ws.neighbors[i]];
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = xi[j] - query[j];
        model.weight.derivatives(t, ws.h, L, plan.wderivs[i]);
        // order zero must match the assembly weights bit for bit: the shape
        // derivative sums cancel down to that level
        plan.wderivs[i][0] = ws.wraw(i);
    }

    // d^zeta gram: the weight argument is x_i - x, hence the (-1)^|zeta|.
    // Kept in extended precision so the eta recursion and the per-neighbor
    // assembly see the same entries to well below double roundoff.
    plan.gram_derivs.assign(gammas.size(), LongMat());
    for (std::size_t z = 1; z < gammas.size(); ++z) {
        const double sign = gammas[z].order() % 2 == 0 ? 1.0 : -1.0;
        LongMat& g = plan.gram_derivs[z];
        g.resize(na, na);
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = a; b < na; ++b) {
                long double s = 0.0L;
                for (std::size_t i = 0; i < nb; ++i)
                    s += static_cast<long double>(plan.wderivs[i][z]) * ws.B(a, i) *
                         ws.B(b, i);
                g(a, b) = g(b, a) = static_cast<long double>(sign * ws.norm) * s;
            }
    }

    plan.eta_derivs.assign(gammas.size(), LongVec());
    plan.eta_derivs[0] = eta.cast<long double>();
    for (std::size_t k = 1; k < gammas.size(); ++k) {
        const geom::MultiIndex& gamma = gammas[k];
        LongVec rhs = LongVec::Zero(na);
        rhs(basis_position(ws.basis, gamma)) =
            static_cast<long double>(gamma.factorial()) /
            std::pow(static_cast<long double>(ws.h), gamma.order());
        for (std::size_t z = 1; z < gammas.size(); ++z) {
            if (!gammas[z].leq(gamma)) continue;
            const auto rest = gamma.minus(gammas[z]);
            rhs.noalias() -= static_cast<long double>(geom::binomial(gamma, gammas[z])) *
                             (plan.gram_derivs[z] *
                              plan.eta_derivs[plan.layout->position(rest)]);
        }
        plan.eta_derivs[k] = ws.solve_extended(rhs);
    }
    return plan;
}

// d^alpha a_i* by the product rule over the weight factor and eta.
// The zeta terms run orders of magnitude above their sum (the eta derivatives
// carry h^{-|gamma|} scales that mostly cancel), so accumulate in extended
// precision or the cancellation eats the constant-reproduction digits.
std::vector<double> assemble_shape_derivs(const Workspace& ws, const DerivativePlan& plan,
                                          const geom::MultiIndex& alpha) {
    const auto& gammas = plan.layout->indices();
    std::vector<long double> acc(ws.neighbors.size(), 0.0L);
    for (std::size_t z = 0; z < gammas.size(); ++z) {
        if (!gammas[z].leq(alpha)) continue;
        const double sign = gammas[z].order() % 2 == 0 ? 1.0 : -1.0;
        const double comb = double(geom::binomial(alpha, gammas[z]));
        const LongVec& eta_rest =
            plan.eta_derivs[plan.layout->position(alpha.minus(gammas[z]))];
        for (std::size_t i = 0; i < ws.neighbors.size(); ++i) {
            long double dot = 0.0L;
            for (Eigen::Index k = 0; k < eta_rest.size(); ++k)
                dot += static_cast<long double>(ws.B(k, i)) * eta_rest(k);
            acc[i] += static_cast<long double>(comb * sign * ws.norm *
                                               plan.wderivs[i][z]) *
                      dot;
        }
    }
    return {acc.begin(), acc.end()};
}

double dot_values(const MlsModel& model, const std::vector<std::size_t>& neighbors,
                  const std::vector<double>& coeffs) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < neighbors.size(); ++i)
        s += static_cast<long double>(coeffs[i]) * model.values[neighbors[i]];
    return double(s);
}

}  // namespace

std::pair<Eigen::MatrixXd, std::vector<std::size_t>> assemble_gram(
    const MlsModel& model, const geom::Point& query) {
    check_model(model, query, false);
    Workspace ws = assemble(model, query);
    return {std::move(ws.gram), std::move(ws.neighbors)};
}

LocalFit local_fit(const MlsModel& model, const geom::Point& query) {
    check_model(model, query, false);
    Workspace ws = assemble(model, query);
    factorize(model, ws);
    LocalFit fit;
    fit.query = query;
    fit.eta = eta_of(ws);
    fit.shape_values = shapes_of(ws, fit.eta);
    fit.neighbor_indices = std::move(ws.neighbors);
    fit.gram = std::move(ws.gram);
    fit.lambda_min = ws.lambda;
    fit.ridged = ws.ridged;
    return fit;
}

double mls_eval(const MlsModel& model, const geom::Point& query) {
    check_model(model, query, true);
    Workspace ws = assemble(model, query);
    factorize(model, ws);
    return dot_values(model, ws.neighbors, shapes_of(ws, eta_of(ws)));
}

std::vector<double> shape_derivatives(const MlsModel& model, const geom::Point& query,
                                      const geom::MultiIndex& alpha) {
    check_model(model, query, false);
    if (alpha.dim() != model.cloud.dim())
        throw ArgumentError("derivative multi-index dimension mismatch");
    if (alpha.order() > model.degree)
        throw ArgumentError("derivative order exceeds the fit degree");
    Workspace ws = assemble(model, query);
    factorize(model, ws);
    const Eigen::VectorXd eta = eta_of(ws);
    if (alpha.order() == 0) return shapes_of(ws, eta);
    const DerivativePlan plan = build_plan(model, query, ws, eta, alpha.order());
    return assemble_shape_derivs(ws, plan, alpha);
}

double mls_eval_derivative(const MlsModel& model, const geom::Point& query,
                           const geom::MultiIndex& alpha) {
    check_model(model, query, true);
    if (alpha.dim() != model.cloud.dim())
        throw ArgumentError("derivative multi-index dimension mismatch");
    if (alpha.order() > model.degree)
        throw ArgumentError("derivative order exceeds the fit degree");
    Workspace ws = assemble(model, query);
    factorize(model, ws);
    const Eigen::VectorXd eta = eta_of(ws);
    if (alpha.order() == 0) return dot_values(model, ws.neighbors, shapes_of(ws, eta));
    const DerivativePlan plan = build_plan(model, query, ws, eta, alpha.order());
    return dot_values(model, ws.neighbors, assemble_shape_derivs(ws, plan, alpha));
}

double mls_eval_operator(const MlsModel& model, const geom::Point& query,
                         const DifferentialOperator& op) {
    check_model(model, query, true);
    const int L = op.order();  // also asserts a nonzero term exists
    for (const auto& [alpha, q] : op.terms) {
        (void)q;
        if (alpha.dim() != model.cloud.dim())
            throw ArgumentError("operator term dimension mismatch");
        if (alpha.order() > model.degree)
            throw ArgumentError("operator order exceeds the fit degree");
    }
    Workspace ws = assemble(model, query);
    factorize(model, ws);
    const Eigen::VectorXd eta = eta_of(ws);
    double s = 0.0;
    if (L > 0) {
        const DerivativePlan plan = build_plan(model, query, ws, eta, L);
        for (const auto& [alpha, q] : op.terms) {
            if (q == 0.0) continue;
            if (alpha.order() == 0)
                s += q * dot_values(model, ws.neighbors, shapes_of(ws, eta));
            else
                s += q * dot_values(model, ws.neighbors,
                                    assemble_shape_derivs(ws, plan, alpha));
        }
    } else {
        const std::vector<double> shapes = shapes_of(ws, eta);
        for (const auto& [alpha, q] : op.terms)
            if (q != 0.0) s += q * dot_values(model, ws.neighbors, shapes);
    }
    return s;
}

double lambda_min(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ArgumentError("matrix must be square");
    if (m.rows() == 1) return m(0, 0);
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace mlslab::mls
