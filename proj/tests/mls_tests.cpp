#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mlslab/errors.hpp"
#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/mls/basis.hpp"
#include "mlslab/mls/bandwidth.hpp"
#include "mlslab/mls/model.hpp"
#include "mlslab/mls/weight_function.hpp"
#include "mlslab/sampling/rng.hpp"
#include "oracles.hpp"

using namespace mlslab;
using geom::MultiIndex;
using geom::Point;
using mls::Bandwidth;
using mls::MlsModel;
using mls::Normalization;
using mls::WeightFunction;
using sampling::Rng;

namespace {

Point rand_point(Rng& rng, int d, double lo = 0.0, double hi = 1.0) {
    Point p(d);
    for (auto& c : p) c = rng.uniform(lo, hi);
    return p;
}

std::vector<Point> rand_points(Rng& rng, std::size_t n, int d, double lo = 0.0,
                               double hi = 1.0) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rand_point(rng, d, lo, hi));
    return pts;
}

MlsModel make_model(std::vector<Point> pts, const std::function<double(const Point&)>& f,
                    int degree, WeightFunction w, Bandwidth bw,
                    Normalization norm = Normalization::PerCount) {
    MlsModel m{geom::PointCloud(std::move(pts)), {}, degree, w, bw, norm};
    for (std::size_t i = 0; i < m.cloud.size(); ++i) m.values.push_back(f(m.cloud[i]));
    return m;
}

// dense polynomial sum c_a x^a with closed-form derivatives
struct Poly {
    std::vector<MultiIndex> alphas;
    std::vector<double> coeffs;

    static Poly random(Rng& rng, int d, int degree) {
        Poly p;
        p.alphas = geom::enumerate_multi_indices(d, degree);
        for (std::size_t k = 0; k < p.alphas.size(); ++k)
            p.coeffs.push_back(rng.uniform(-2.0, 2.0));
        return p;
    }
    double deriv(const Point& x, const MultiIndex& beta) const {
        double s = 0.0;
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            if (!beta.leq(alphas[k])) continue;
            double v = coeffs[k];
            for (int j = 0; j < beta.dim(); ++j) {
                for (int m = alphas[k][j]; m > alphas[k][j] - beta[j]; --m) v *= m;
                for (int m = 0; m < alphas[k][j] - beta[j]; ++m) v *= x[j];
            }
            s += v;
        }
        return s;
    }
    double operator()(const Point& x) const {
        return deriv(x, MultiIndex::zero(alphas[0].dim()));
    }
};

}  // namespace

TEST_CASE("weight values: closed forms and compact support") {
    const auto bump = WeightFunction::smooth_bump().with_bandwidth(0.5);
    CHECK(mls::weight_eval(bump, {0.0, 0.0}, MultiIndex::zero(2)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    // support radius is s*h = 0.5; boundary and beyond give exactly zero
    for (int order = 0; order <= 4; ++order) {
        CHECK(mls::weight_eval(bump, {0.5, 0.0}, MultiIndex::axis(2, 0, order)) == 0.0);
        CHECK(mls::weight_eval(bump, {0.4, 0.4}, MultiIndex::axis(2, 1, order)) == 0.0);
    }
    const auto wend = WeightFunction::wendland_like().with_bandwidth(1.0);
    // (1-r)^4 (4r+1) at r = 0.5
    CHECK(mls::weight_eval(wend, {0.5}, MultiIndex::zero(1)) ==
          doctest::Approx(0.0625 * 3.0).epsilon(1e-14));
    CHECK(mls::weight_eval(wend, {0.0}, MultiIndex::zero(1)) == doctest::Approx(1.0));
    const auto ind = WeightFunction::indicator().with_bandwidth(1.0);
    CHECK(mls::weight_eval(ind, {0.3}, MultiIndex::zero(1)) == 1.0);
    CHECK(mls::weight_eval(ind, {1.3}, MultiIndex::zero(1)) == 0.0);
    CHECK(mls::weight_eval(ind, {0.3}, MultiIndex::axis(1, 0, 2)) == 0.0);

    CHECK_THROWS_AS(mls::weight_eval(bump, {0.1, 0.1}, MultiIndex::axis(2, 0, 5)),
                    ArgumentError);
    CHECK_THROWS_AS(mls::weight_eval(WeightFunction::smooth_bump(), {0.1},
                                     MultiIndex::zero(1)),
                    ArgumentError);
    CHECK_THROWS_AS(WeightFunction::from_name("no-such-profile"), ConfigError);
}

TEST_CASE("weight first derivatives match finite differences") {
    Rng rng(501);
    for (const auto& w :
         {WeightFunction::smooth_bump(), WeightFunction::wendland_like()}) {
        for (int d = 1; d <= 3; ++d) {
            const double h = 0.7;
            const auto wh = w.with_bandwidth(h);
            for (int trial = 0; trial < 8; ++trial) {
                // interior offset, clear of both origin and support boundary
                Point t = rand_point(rng, d, -0.3, 0.3);
                t[0] += t[0] >= 0 ? 0.1 : -0.1;
                const int axis = int(rng.uniform() * d);
                const double eps = 1e-6;
                Point tp = t, tm = t;
                tp[axis] += eps;
                tm[axis] -= eps;
                const double fd = (wh.value(tp, h) - wh.value(tm, h)) / (2 * eps);
                const double an = mls::weight_eval(wh, t, MultiIndex::axis(d, axis, 1));
                CHECK(an == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("higher weight derivatives agree with differences of lower ones") {
    // differencing the analytic (order-1) derivative keeps the FD noise low
    Rng rng(502);
    for (const auto& w :
         {WeightFunction::smooth_bump(), WeightFunction::wendland_like()}) {
        const int d = 2;
        const double h = 1.0;
        const auto wh = w.with_bandwidth(h);
        for (int trial = 0; trial < 10; ++trial) {
            Point t = {rng.uniform(0.15, 0.5), rng.uniform(-0.5, -0.15)};
            const auto gammas = geom::enumerate_multi_indices(d, 4);
            for (const auto& g : gammas) {
                if (g.order() < 2) continue;
                int axis = 0;
                while (g[axis] == 0) ++axis;
                const auto lower = g.minus(MultiIndex::axis(d, axis, 1));
                const double eps = 1e-6;
                Point tp = t, tm = t;
                tp[axis] += eps;
                tm[axis] -= eps;
                const double fd = (mls::weight_eval(wh, tp, lower) -
                                   mls::weight_eval(wh, tm, lower)) /
                                  (2 * eps);
                const double an = mls::weight_eval(wh, t, g);
                CHECK(an == doctest::Approx(fd).epsilon(5e-6));
            }
        }
    }
}

TEST_CASE("weight bandwidth scaling law") {
    // theta_h(t) = Phi(t/h) implies d^g theta_h(t) = h^{-|g|} d^g theta_1(t/h)
    const auto w = WeightFunction::smooth_bump();
    const auto wh = w.with_bandwidth(0.25);
    const auto w1 = w.with_bandwidth(1.0);
    const Point t = {0.1, -0.05};
    const Point t_scaled = {0.4, -0.2};
    for (const auto& g : geom::enumerate_multi_indices(2, 3)) {
        const double lhs = mls::weight_eval(wh, t, g);
        const double rhs = std::pow(4.0, g.order()) * mls::weight_eval(w1, t_scaled, g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("scaled monomial values and derivatives") {
    CHECK(mls::scaled_monomial(MultiIndex({1, 0}), {0.3, 0.7}, {0.0, 0.0}, 0.1,
                               MultiIndex::zero(2)) == doctest::Approx(3.0));
    CHECK(mls::scaled_monomial(MultiIndex({2}), {0.9}, {0.2}, 0.05,
                               MultiIndex({2})) == doctest::Approx(2.0 / 0.0025));
    CHECK(mls::scaled_monomial(MultiIndex({1, 1}), {0.4, 0.9}, {0.1, 0.2}, 0.3,
                               MultiIndex({0, 2})) == 0.0);
    // FD cross-check of a mixed derivative
    const MultiIndex alpha({2, 1});
    const MultiIndex d1({1, 0});
    const Point c = {0.1, 0.3};
    const double h = 0.2, eps = 1e-6;
    const double fd = (mls::scaled_monomial(alpha, {0.5 + eps, 0.7}, c, h, d1) -
                       mls::scaled_monomial(alpha, {0.5 - eps, 0.7}, c, h, d1)) /
                      (2 * eps);
    CHECK(mls::scaled_monomial(alpha, {0.5, 0.7}, c, h, MultiIndex({2, 0})) ==
          doctest::Approx(fd).epsilon(1e-8));
    CHECK_THROWS_AS(mls::scaled_monomial(MultiIndex({1}), {0.5}, {0.0}, 0.0,
                                         MultiIndex({0})),
                    ArgumentError);
}

TEST_CASE("bandwidth rules") {
    CHECK(Bandwidth::fixed(0.07).resolve(12345, 3) == 0.07);
    const double expect = 1.5 * std::pow(std::log(1000.0) / 1000.0, 0.5);
    CHECK(Bandwidth::rate(1.5).resolve(1000, 2) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(Bandwidth::rate(2.0).resolve(50, 1) ==
          doctest::Approx(2.0 * std::log(50.0) / 50.0).epsilon(1e-15));
    CHECK_THROWS_AS(Bandwidth::fixed(0.0), ArgumentError);
    CHECK_THROWS_AS(Bandwidth::rate(1.0).resolve(1, 1), ArgumentError);
}

TEST_CASE("gram assembly: closed forms, symmetry, dense oracle") {
    const auto w = WeightFunction::smooth_bump();
    // degree 0, raw: 1x1 matrix holding the plain weight sum
    {
        std::vector<Point> pts = {{0.45}, {0.52}, {0.61}};
        auto m = make_model(pts, [](const Point&) { return 0.0; }, 0, w,
                            Bandwidth::fixed(0.2), Normalization::Raw);
        const auto [gram, idx] = mls::assemble_gram(m, {0.5});
        REQUIRE(gram.rows() == 1);
        REQUIRE(idx == std::vector<std::size_t>{0, 1, 2});
        double s = 0.0;
        for (auto i : idx) s += w.value({pts[i][0] - 0.5}, 0.2);
        CHECK(gram(0, 0) == doctest::Approx(s).epsilon(1e-15));
    }
    // degree 1, d=1, symmetric neighbors: off-diagonal exactly zero
    {
        std::vector<Point> pts = {{0.4}, {0.6}};
        auto m = make_model(pts, [](const Point&) { return 0.0; }, 1, w,
                            Bandwidth::fixed(0.3));
        const auto [gram, idx] = mls::assemble_gram(m, {0.5});
        CHECK(gram(0, 1) == 0.0);
        CHECK(gram(1, 0) == 0.0);
    }
    // degree 2, d=2, random neighbors vs dense summation oracle
    {
        Rng rng(77);
        auto pts = rand_points(rng, 40, 2, 0.3, 0.7);
        for (auto norm : {Normalization::Raw, Normalization::PerCount}) {
            auto m = make_model(pts, [](const Point&) { return 0.0; }, 2, w,
                                Bandwidth::fixed(0.5), norm);
            const Point q = {0.5, 0.5};
            const auto [gram, idx] = mls::assemble_gram(m, q);
            REQUIRE(idx.size() == 40);
            std::vector<Point> offsets;
            std::vector<double> wts;
            std::vector<std::vector<int>> alphas;
            for (auto i : idx) {
                offsets.push_back({pts[i][0] - q[0], pts[i][1] - q[1]});
                wts.push_back(w.value(offsets.back(), 0.5));
            }
            for (const auto& a : geom::enumerate_multi_indices(2, 2))
                alphas.push_back(a.entries());
            const auto dense = oracle::gram(
                offsets, wts, alphas, 0.5,
                norm == Normalization::Raw ? 1.0 : 1.0 / double(idx.size()));
            for (int a = 0; a < gram.rows(); ++a)
                for (int b = 0; b < gram.cols(); ++b) {
                    CHECK(gram(a, b) == doctest::Approx(dense(a, b)).epsilon(1e-13));
                    CHECK(gram(a, b) == gram(b, a));  // exact as stored
                }
        }
    }
    // empty neighborhood carries the zero count
    {
        auto m = make_model({{0.0}, {0.1}}, [](const Point&) { return 0.0; }, 0, w,
                            Bandwidth::fixed(0.05));
        try {
            mls::assemble_gram(m, {0.9});
            FAIL("expected insufficient-data error");
        } catch (const InsufficientDataError& e) {
            CHECK(e.neighbor_count == 0);
        }
    }
}

TEST_CASE("local fit: Shepard weights, unity, normal-equations oracle") {
    const auto w = WeightFunction::smooth_bump();
    {
        // degree 0 reduces to Shepard weights theta_i / sum theta_j
        std::vector<Point> pts = {{0.41}, {0.47}, {0.55}, {0.62}};
        auto m = make_model(pts, [](const Point& p) { return p[0]; }, 0, w,
                            Bandwidth::fixed(0.25));
        const auto fit = mls::local_fit(m, {0.5});
        double total = 0.0;
        std::vector<double> th;
        for (auto i : fit.neighbor_indices) {
            th.push_back(w.value({pts[i][0] - 0.5}, 0.25));
            total += th.back();
        }
        for (std::size_t i = 0; i < th.size(); ++i)
            CHECK(fit.shape_values[i] == doctest::Approx(th[i] / total).epsilon(1e-14));
    }
    {
        // degree 2, d=1, 7 equispaced neighbors vs the dense weighted
        // normal-equations solve
        std::vector<Point> pts;
        for (int i = 0; i < 7; ++i) pts.push_back({0.35 + 0.05 * i});
        auto m = make_model(pts, [](const Point& p) { return std::sin(p[0]); }, 2, w,
                            Bandwidth::fixed(0.22));
        const auto fit = mls::local_fit(m, {0.5});
        REQUIRE(fit.neighbor_indices.size() == 7);
        std::vector<Point> offsets;
        std::vector<double> wts, fv;
        for (auto i : fit.neighbor_indices) {
            offsets.push_back({pts[i][0] - 0.5});
            wts.push_back(w.value(offsets.back(), 0.22));
            fv.push_back(m.values[i]);
        }
        Eigen::VectorXd shape;
        oracle::weighted_ls_coeffs(offsets, wts, fv, {{0}, {1}, {2}}, 0.22, &shape);
        for (std::size_t i = 0; i < 7; ++i)
            CHECK(fit.shape_values[i] == doctest::Approx(shape(i)).epsilon(1e-10));
        CHECK(fit.lambda_min == mls::lambda_min(fit.gram));
        CHECK(fit.lambda_min > 0.0);
    }
    {
        // partition of unity and monomial reproduction across random configs
        Rng rng(88);
        for (int degree = 0; degree <= 3; ++degree) {
            auto pts = rand_points(rng, 300, 2);
            auto m = make_model(pts, [](const Point& p) { return p[0] + p[1]; }, degree,
                                w, Bandwidth::rate(2.0));
            const Point q = rand_point(rng, 2, 0.3, 0.7);
            const auto fit = mls::local_fit(m, q);
            double unity = 0.0;
            for (double a : fit.shape_values) unity += a;
            CHECK(unity == doctest::Approx(1.0).epsilon(1e-10));
            // reproduction of every monomial of total degree <= fit degree
            for (const auto& alpha : geom::enumerate_multi_indices(2, degree)) {
                double lhs = 0.0, rhs = 1.0;
                for (std::size_t i = 0; i < fit.neighbor_indices.size(); ++i) {
                    const Point& xi = m.cloud[fit.neighbor_indices[i]];
                    double v = 1.0;
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < alpha[j]; ++k) v *= xi[j];
                    lhs += fit.shape_values[i] * v;
                }
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < alpha[j]; ++k) rhs *= q[j];
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("local fit error paths") {
    const auto w = WeightFunction::smooth_bump();
    {
        // fewer neighbors than basis functions
        auto m = make_model({{0.48}, {0.5}, {0.52}}, [](const Point&) { return 0.0; },
                            3, w, Bandwidth::fixed(0.1));
        try {
            mls::local_fit(m, {0.5});
            FAIL("expected insufficient-data error");
        } catch (const InsufficientDataError& e) {
            CHECK(e.neighbor_count == 3);
        }
    }
    {
        // collinear neighbors in d=2 make the degree-1 gram rank deficient
        std::vector<Point> pts;
        for (int i = 0; i < 12; ++i) pts.push_back({0.3 + 0.04 * i, 0.5});
        auto m = make_model(pts, [](const Point&) { return 1.0; }, 1, w,
                            Bandwidth::fixed(0.4));
        try {
            mls::local_fit(m, {0.5, 0.5});
            FAIL("expected ill-conditioned error");
        } catch (const IllConditionedError& e) {
            CHECK(e.lambda_min < 1e-10);
            CHECK(e.neighbor_count == 12);
        }
        // ridge fallback turns the same fit into a flagged success
        m.ridge = 1e-8;
        const auto fit = mls::local_fit(m, {0.5, 0.5});
        CHECK(fit.ridged);
        CHECK(fit.lambda_min < 1e-10);
        double unity = 0.0;
        for (double a : fit.shape_values) unity += a;
        CHECK(unity == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("mls_eval: constants, linear reproduction, refinement, locality") {
    const auto w = WeightFunction::smooth_bump();
    Rng rng(99);
    {
        auto pts = rand_points(rng, 400, 2);
        auto m = make_model(pts, [](const Point&) { return 7.0; }, 2, w,
                            Bandwidth::rate(2.0));
        for (int k = 0; k < 20; ++k)
            CHECK(mls::mls_eval(m, rand_point(rng, 2)) ==
                  doctest::Approx(7.0).epsilon(1e-10));
        auto lin = make_model(pts, [](const Point& p) { return 3.0 + 2.0 * p[0]; }, 1,
                              w, Bandwidth::rate(2.0));
        for (int k = 0; k < 20; ++k) {
            const Point q = rand_point(rng, 2);
            CHECK(mls::mls_eval(lin, q) ==
                  doctest::Approx(3.0 + 2.0 * q[0]).epsilon(1e-9));
        }
    }
    {
        // smooth target: refining the cloud shrinks the max probe error
        auto f = [](const Point& p) { return std::sin(2.0 * std::numbers::pi * p[0]); };
        double prev_err = 0.0;
        for (std::size_t n : {2000u, 8000u}) {
            auto pts = rand_points(rng, n, 1);
            auto m = make_model(pts, f, 2, w, Bandwidth::rate(1.5));
            double err = 0.0;
            for (int k = 0; k < 50; ++k) {
                const Point q = {0.02 + 0.96 * (k / 49.0)};
                err = std::max(err, std::fabs(mls::mls_eval(m, q) - f(q)));
            }
            if (n == 2000u) {
                prev_err = err;
                CHECK(err < 0.05);
            } else {
                CHECK(err < prev_err);
            }
        }
    }
    {
        // perturbing a point outside the support leaves the value bit-identical
        auto pts = rand_points(rng, 200, 1, 0.4, 0.6);
        auto far = pts;
        pts.push_back({0.95});
        far.push_back({0.97});
        const auto f = [](const Point& p) { return std::exp(p[0]); };
        auto m1 = make_model(pts, f, 2, w, Bandwidth::fixed(0.08));
        auto m2 = make_model(far, f, 2, w, Bandwidth::fixed(0.08));
        CHECK(mls::mls_eval(m1, {0.5}) == mls::mls_eval(m2, {0.5}));
    }
}

TEST_CASE("analytic derivatives reproduce polynomials") {
    const auto w = WeightFunction::smooth_bump();
    Rng rng(111);
    {
        // spec example: linear field, first derivative
        auto pts = rand_points(rng, 400, 2);
        auto m = make_model(pts, [](const Point& p) { return 3.0 + 2.0 * p[0]; }, 2, w,
                            Bandwidth::rate(2.0));
        for (int k = 0; k < 10; ++k) {
            const Point q = rand_point(rng, 2, 0.2, 0.8);
            CHECK(mls::mls_eval_derivative(m, q, MultiIndex({1, 0})) ==
                  doctest::Approx(2.0).epsilon(1e-8));
            CHECK(mls::mls_eval_derivative(m, q, MultiIndex::zero(2)) ==
                  mls::mls_eval(m, q));
        }
    }
    {
        // d=2 degree 2: all derivatives of a random quadratic, 100 probes
        const Poly poly = Poly::random(rng, 2, 2);
        auto pts = rand_points(rng, 2000, 2);
        auto m = make_model(pts, [&](const Point& p) { return poly(p); }, 2, w,
                            Bandwidth::rate(2.0));
        for (int k = 0; k < 100; ++k) {
            const Point q = rand_point(rng, 2);
            for (const auto& beta : geom::enumerate_multi_indices(2, 2)) {
                const double expect = poly.deriv(q, beta);
                CHECK(mls::mls_eval_derivative(m, q, beta) ==
                      doctest::Approx(expect).epsilon(1e-7).scale(1.0));
            }
        }
    }
    {
        // d=1 degree 3 cubic including the third derivative
        const Poly poly = Poly::random(rng, 1, 3);
        auto pts = rand_points(rng, 500, 1);
        auto m = make_model(pts, [&](const Point& p) { return poly(p); }, 3, w,
                            Bandwidth::rate(2.5));
        for (int k = 0; k < 20; ++k) {
            const Point q = rand_point(rng, 1, 0.1, 0.9);
            for (int ord = 0; ord <= 3; ++ord)
                CHECK(mls::mls_eval_derivative(m, q, MultiIndex({ord})) ==
                      doctest::Approx(poly.deriv(q, MultiIndex({ord})))
                          .epsilon(1e-7)
                          .scale(1.0));
        }
    }
}

TEST_CASE("analytic derivatives match finite differences on smooth data") {
    const auto w = WeightFunction::smooth_bump();
    Rng rng(222);
    auto f = [](const Point& p) {
        return std::sin(2.0 * std::numbers::pi * p[0]) *
               std::cos(2.0 * std::numbers::pi * p[1]);
    };
    auto pts = rand_points(rng, 1500, 2);
    auto m = make_model(pts, f, 3, w, Bandwidth::rate(2.0));
    const double eps = 1e-5;
    for (int k = 0; k < 6; ++k) {
        const Point q = rand_point(rng, 2, 0.25, 0.75);
        for (int axis = 0; axis < 2; ++axis) {
            Point qp = q, qm = q;
            qp[axis] += eps;
            qm[axis] -= eps;
            const double fd = (mls::mls_eval(m, qp) - mls::mls_eval(m, qm)) / (2 * eps);
            const double an = mls::mls_eval_derivative(m, q, MultiIndex::axis(2, axis, 1));
            CHECK(an == doctest::Approx(fd).epsilon(1e-4));
        }
    }
    // second order: difference the analytic first derivative per shape value
    const Point q = {0.42, 0.58};
    const auto fit = mls::local_fit(m, q);
    for (const auto& beta :
         {MultiIndex({2, 0}), MultiIndex({1, 1}), MultiIndex({0, 2})}) {
        int axis = beta[0] > 0 ? 0 : 1;
        const auto lower = beta.minus(MultiIndex::axis(2, axis, 1));
        Point qp = q, qm = q;
        qp[axis] += eps;
        qm[axis] -= eps;
        const auto up = mls::shape_derivatives(m, qp, lower);
        const auto dn = mls::shape_derivatives(m, qm, lower);
        const auto an = mls::shape_derivatives(m, q, beta);
        REQUIRE(up.size() == an.size());
        REQUIRE(dn.size() == an.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < an.size(); ++i) {
            const double fd = (up[i] - dn[i]) / (2 * eps);
            num = std::max(num, std::fabs(fd - an[i]));
            den = std::max(den, std::fabs(an[i]));
        }
        CHECK(num / den < 1e-4);
    }
}

TEST_CASE("shape values are invariant to gram normalization") {
    Rng rng(333);
    auto pts = rand_points(rng, 600, 2);
    const auto f = [](const Point& p) { return std::exp(p[0] - p[1]); };
    auto raw = make_model(pts, f, 2, WeightFunction::smooth_bump(), Bandwidth::rate(2.0),
                          Normalization::Raw);
    auto pc = raw;
    pc.normalization = Normalization::PerCount;
    for (int k = 0; k < 10; ++k) {
        const Point q = rand_point(rng, 2, 0.2, 0.8);
        const auto fit_raw = mls::local_fit(raw, q);
        const auto fit_pc = mls::local_fit(pc, q);
        REQUIRE(fit_raw.neighbor_indices == fit_pc.neighbor_indices);
        for (std::size_t i = 0; i < fit_raw.shape_values.size(); ++i)
            CHECK(fit_raw.shape_values[i] ==
                  doctest::Approx(fit_pc.shape_values[i]).epsilon(1e-12).scale(1.0));
        const auto da = mls::shape_derivatives(raw, q, MultiIndex({1, 1}));
        const auto db = mls::shape_derivatives(pc, q, MultiIndex({1, 1}));
        for (std::size_t i = 0; i < da.size(); ++i)
            CHECK(da[i] == doctest::Approx(db[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("operator evaluation: identity, laplacian, linearity") {
    Rng rng(444);
    auto pts = rand_points(rng, 1200, 2);
    const auto w = WeightFunction::smooth_bump();
    {
        auto m = make_model(pts, [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; },
                            2, w, Bandwidth::rate(2.0));
        const Point q = {0.37, 0.61};
        CHECK(mls::mls_eval_operator(m, q, mls::DifferentialOperator::identity(2)) ==
              mls::mls_eval(m, q));
        CHECK(mls::mls_eval_operator(m, q, mls::DifferentialOperator::laplacian(2)) ==
              doctest::Approx(4.0).epsilon(1e-7));
    }
    {
        auto m = make_model(pts, [](const Point& p) { return std::sin(3 * p[0] + p[1]); },
                            3, w, Bandwidth::rate(2.0));
        const Point q = {0.52, 0.44};
        mls::DifferentialOperator op;
        op.terms = {{MultiIndex({1, 0}), 1.0}, {MultiIndex({0, 1}), 2.0}};
        const double combo = mls::mls_eval_derivative(m, q, MultiIndex({1, 0})) +
                             2.0 * mls::mls_eval_derivative(m, q, MultiIndex({0, 1}));
        CHECK(mls::mls_eval_operator(m, q, op) ==
              doctest::Approx(combo).epsilon(1e-12));
        mls::DifferentialOperator bad;
        bad.terms = {{MultiIndex({0, 0}), 0.0}};
        CHECK_THROWS_AS(mls::mls_eval_operator(m, q, bad), ArgumentError);
        CHECK_THROWS_AS(mls::mls_eval_derivative(m, q, MultiIndex({4, 0})),
                        ArgumentError);
    }
}

TEST_CASE("lambda_min closed forms and dense oracle") {
    Eigen::MatrixXd one(1, 1);
    one(0, 0) = 0.37;
    CHECK(mls::lambda_min(one) == 0.37);
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
    diag(0, 0) = 3.0;
    diag(1, 1) = 1.0;
    diag(2, 2) = 2.0;
    CHECK(mls::lambda_min(diag) == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(555);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd r(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
        Eigen::MatrixXd psd = r * r.transpose() + 0.1 * Eigen::MatrixXd::Identity(6, 6);
        CHECK(mls::lambda_min(psd) ==
              doctest::Approx(oracle::lambda_min_charpoly(psd)).epsilon(1e-9));
    }
}
