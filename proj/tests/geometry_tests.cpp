#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mlslab/errors.hpp"
#include "mlslab/geometry/domain.hpp"
#include "mlslab/geometry/multi_index.hpp"
#include "mlslab/geometry/point_cloud.hpp"
#include "mlslab/geometry/set_statistics.hpp"
#include "mlslab/sampling/rng.hpp"
#include "oracles.hpp"

using namespace mlslab;
using geom::Domain;
using geom::MultiIndex;
using geom::Point;
using geom::PointCloud;

namespace {

std::vector<Point> random_points(std::uint64_t seed, std::size_t n, int d,
                                 double lo = 0.0, double hi = 1.0) {
    sampling::Rng rng(seed);
    std::vector<Point> pts(n, Point(d));
    for (auto& p : pts)
        for (int j = 0; j < d; ++j) p[j] = rng.uniform(lo, hi);
    return pts;
}

PointCloud line_cloud(std::initializer_list<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back({x});
    return PointCloud(std::move(pts));
}

}  // namespace

TEST_CASE("range_query on a line") {
    PointCloud cloud = line_cloud({0.0, 0.3, 1.0});
    CHECK(cloud.range_query({0.0}, 0.5) == std::vector<std::size_t>{0, 1});
    // zero radius is boundary-inclusive: the point itself comes back
    PointCloud cloud2 = line_cloud({0.1, 0.2, 0.35, 0.9, 0.55});
    CHECK(cloud2.range_query({0.9}, 0.0) == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(cloud2.range_query({0.0, 0.0}, 0.1), ArgumentError);
    CHECK_THROWS_AS(cloud2.range_query({0.0}, -1.0), ArgumentError);
}

TEST_CASE("range_query equals brute force on random instances") {
    for (std::uint64_t inst = 0; inst < 40; ++inst) {
        sampling::Rng rng(900 + inst);
        const int d = 1 + int(inst % 3);
        const std::size_t n = 1 + (rng.next_u64() % 500);
        auto pts = random_points(1000 + inst, n, d);
        PointCloud cloud(pts);
        for (int q = 0; q < 5; ++q) {
            Point center(d);
            for (int j = 0; j < d; ++j) center[j] = rng.uniform();
            double radius = rng.uniform(0.0, 0.7);
            CHECK(cloud.range_query(center, radius) == oracle::range_query(pts, center, radius));
        }
    }
    // the documented case: 200 uniform points, center (0.5,0.5), radius 0.2
    auto pts = random_points(77, 200, 2);
    PointCloud cloud(pts);
    CHECK(cloud.range_query({0.5, 0.5}, 0.2) == oracle::range_query(pts, {0.5, 0.5}, 0.2));
}

TEST_CASE("range_query honors the minimum-image metric") {
    std::vector<Point> pts = {{0.05, 0.5}, {0.95, 0.5}, {0.5, 0.02}, {0.5, 0.5}};
    PointCloud cloud(pts);
    // 0.05 and 0.95 are 0.10 apart across the seam
    auto res = cloud.range_query({0.02, 0.5}, 0.12, /*periodic=*/true);
    CHECK(res == std::vector<std::size_t>{0, 1});
    CHECK(cloud.range_query({0.02, 0.5}, 0.12, false) == std::vector<std::size_t>{0});
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        auto rpts = random_points(500 + inst, 150, 2);
        PointCloud rc(rpts);
        sampling::Rng rng(600 + inst);
        Point center = {rng.uniform(), rng.uniform()};
        double radius = rng.uniform(0.0, 0.6);
        CHECK(rc.range_query(center, radius, true) ==
              oracle::range_query(rpts, center, radius, true));
    }
}

TEST_CASE("fill_distance basic values") {
    Domain dom = Domain::unit_cube(1);
    CHECK(geom::fill_distance(line_cloud({0.5}), dom, 1001) == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(geom::fill_distance(line_cloud({0.0, 1.0}), dom, 1001) == doctest::Approx(0.5).epsilon(2e-3));
    CHECK_THROWS_AS(geom::fill_distance(PointCloud(), dom, 100), InsufficientDataError);
    CHECK_THROWS_AS(geom::fill_distance(line_cloud({0.5}), dom, 1), ArgumentError);
}

TEST_CASE("fill_distance equals exhaustive grid scan") {
    Domain dom = Domain::unit_cube(2);
    auto pts = random_points(42, 10, 2);
    PointCloud cloud(pts);
    const double got = geom::fill_distance(cloud, dom, 200);
    const double want = oracle::fill_distance(pts, dom.candidate_grid(200));
    CHECK(got == doctest::Approx(want).epsilon(1e-14));

    Domain ball = Domain::ball(2, 0.8);
    auto bpts = random_points(43, 12, 2, -0.5, 0.5);
    PointCloud bcloud(bpts);
    CHECK(geom::fill_distance(bcloud, ball, 101) ==
          doctest::Approx(oracle::fill_distance(bpts, ball.candidate_grid(101))).epsilon(1e-14));

    Domain torus = Domain::periodic_cube(2);
    CHECK(geom::fill_distance(cloud, torus, 100) ==
          doctest::Approx(oracle::fill_distance(pts, torus.candidate_grid(100), true)).epsilon(1e-14));
}

TEST_CASE("fill_distance monotone under point insertion") {
    Domain dom = Domain::unit_cube(2);
    auto pts = random_points(7, 5, 2);
    double prev = 1e300;
    for (std::size_t n = 1; n <= pts.size(); ++n) {
        std::vector<Point> head(pts.begin(), pts.begin() + n);
        double h = geom::fill_distance(PointCloud(head), dom, 120);
        CHECK(h <= prev + 1e-15);
        prev = h;
    }
}

TEST_CASE("separation") {
    CHECK(geom::separation(line_cloud({0.0, 0.3, 1.0})) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(geom::separation(line_cloud({0.2, 0.7, 0.2})) == 0.0);  // duplicate point
    CHECK_THROWS_AS(geom::separation(line_cloud({0.5})), InsufficientDataError);
    for (std::uint64_t inst = 0; inst < 12; ++inst) {
        const int d = 1 + int(inst % 3);
        auto pts = random_points(2000 + inst, 100, d);
        CHECK(geom::separation(PointCloud(pts)) ==
              doctest::Approx(oracle::separation(pts)).epsilon(1e-15));
    }
    // monotone under insertion
    auto pts = random_points(11, 60, 2);
    double prev = 1e300;
    for (std::size_t n = 2; n <= pts.size(); n += 7) {
        std::vector<Point> head(pts.begin(), pts.begin() + n);
        double s = geom::separation(PointCloud(head));
        CHECK(s <= prev + 1e-15);
        prev = s;
    }
}

TEST_CASE("separation under the periodic metric") {
    std::vector<Point> pts = {{0.02}, {0.5}, {0.97}};
    CHECK(geom::separation(PointCloud(pts), Domain::periodic_cube(1)) ==
          doctest::Approx(0.05).epsilon(1e-12));
    for (std::uint64_t inst = 0; inst < 6; ++inst) {
        auto rpts = random_points(3000 + inst, 80, 2);
        CHECK(geom::separation(PointCloud(rpts), Domain::periodic_cube(2)) ==
              doctest::Approx(oracle::separation(rpts, true)).epsilon(1e-14));
    }
}

TEST_CASE("hausdorff_distance") {
    auto pts = random_points(5, 50, 2);
    PointCloud a(pts);
    CHECK(geom::hausdorff_distance(a, a) == 0.0);
    CHECK(geom::hausdorff_distance(line_cloud({0.0}), line_cloud({1.0})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(geom::hausdorff_distance(a, PointCloud()), InsufficientDataError);

    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        auto p = random_points(4000 + inst, 50, 2);
        auto q = random_points(4100 + inst, 50, 2);
        PointCloud cp(p), cq(q);
        const double got = geom::hausdorff_distance(cp, cq);
        CHECK(got == doctest::Approx(oracle::hausdorff(p, q)).epsilon(1e-15));
        CHECK(geom::hausdorff_distance(cq, cp) == doctest::Approx(got).epsilon(1e-15));
    }
    // triangle inequality on random triples
    for (std::uint64_t inst = 0; inst < 8; ++inst) {
        PointCloud x(random_points(5000 + inst, 30, 2));
        PointCloud y(random_points(5100 + inst, 25, 2));
        PointCloud z(random_points(5200 + inst, 35, 2));
        CHECK(geom::hausdorff_distance(x, z) <=
              geom::hausdorff_distance(x, y) + geom::hausdorff_distance(y, z) + 1e-12);
    }
}

TEST_CASE("enumerate_multi_indices graded-lex order") {
    auto idx = geom::enumerate_multi_indices(2, 2);
    REQUIRE(idx.size() == 6);
    std::vector<std::vector<int>> want = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(idx[i].entries() == want[i]);

    auto one = geom::enumerate_multi_indices(1, 0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].order() == 0);

    CHECK(geom::enumerate_multi_indices(3, 2).size() == 10);  // C(5,3)

    for (int d = 1; d <= 5; ++d)
        for (int m = 0; m <= 6; ++m)
            CHECK(geom::enumerate_multi_indices(d, m).size() ==
                  geom::binomial(std::uint64_t(d + m), std::uint64_t(d)));
}

TEST_CASE("multi-index arithmetic") {
    MultiIndex a({2, 1, 0}), b({1, 1, 0});
    CHECK(a.order() == 3);
    CHECK(b.leq(a));
    CHECK_FALSE(a.leq(b));
    CHECK(a.minus(b).entries() == std::vector<int>{1, 0, 0});
    CHECK(a.factorial() == 2);
    CHECK(MultiIndex({3, 2}).factorial() == 12);
    CHECK(geom::binomial(a, b) == 2);  // C(2,1)*C(1,1)*C(0,0)
    CHECK_THROWS_AS(b.minus(a), ArgumentError);
    CHECK_THROWS_AS(MultiIndex({-1}), ArgumentError);
}

TEST_CASE("domain membership, volume, cone parameters") {
    Domain cube = Domain::unit_cube(3);
    CHECK(cube.contains({0.0, 0.5, 1.0}));
    CHECK_FALSE(cube.contains({0.0, 0.5, 1.0001}));
    CHECK(cube.volume() == 1.0);
    CHECK(cube.cone_angle() > 0.0);
    CHECK(cube.cone_radius() > 0.0);

    Domain ball = Domain::ball(2, 2.0);
    CHECK(ball.contains({1.0, 1.0}));
    CHECK_FALSE(ball.contains({2.0, 0.1}));
    CHECK(ball.volume() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(Domain::ball(3, 1.0).volume() == doctest::Approx(4.0 / 3.0 * std::numbers::pi).epsilon(1e-14));

    CHECK(Domain::periodic_cube(2).dist({0.05, 0.5}, {0.95, 0.5}) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(Domain::ball(2, -1.0), ArgumentError);
    CHECK_THROWS_AS(Domain::unit_cube(0), ArgumentError);
}

TEST_CASE("kd-tree handles clustered and collinear inputs") {
    // many identical coordinates exercise tie handling in the median split
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({0.5, double(i % 3)});
    for (int i = 0; i < 100; ++i) pts.push_back({double(i) / 100.0, 1.0});
    PointCloud cloud(pts);
    sampling::Rng rng(99);
    for (int q = 0; q < 10; ++q) {
        Point c = {rng.uniform(), rng.uniform(0.0, 2.0)};
        double r = rng.uniform(0.0, 1.0);
        CHECK(cloud.range_query(c, r) == oracle::range_query(pts, c, r));
    }
}

TEST_CASE("domain quadrature integrates smooth functions to high accuracy") {
    auto integrate = [](const Domain& dom, auto&& f) {
        double s = 0.0;
        for (const auto& [node, weight] : dom.quadrature()) s += weight * f(node);
        return s;
    };
    auto one = [](const Point&) { return 1.0; };
    auto x0sq = [](const Point& p) { return p[0] * p[0]; };

    for (int d = 1; d <= 3; ++d) {
        const auto cube = Domain::unit_cube(d);
        CHECK(integrate(cube, one) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(integrate(cube, x0sq) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
        const auto ball = Domain::ball(d);
        CHECK(integrate(ball, one) == doctest::Approx(ball.volume()).epsilon(1e-12));
        const auto torus = Domain::periodic_cube(d);
        CHECK(integrate(torus, one) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(integrate(torus, [](const Point& p) {
                  double s = std::sin(2.0 * std::numbers::pi * p[0]);
                  return s * s;
              }) == doctest::Approx(0.5).epsilon(1e-12));
    }
    // moments of the ball: int x^2 = pi/4 (d=2), 4*pi/15 (d=3)
    CHECK(integrate(Domain::ball(2), x0sq) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
    CHECK(integrate(Domain::ball(3), x0sq) == doctest::Approx(4.0 * std::numbers::pi / 15.0).epsilon(1e-12));
    CHECK(integrate(Domain::ball(2, 2.0), one) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(Domain::ball(4).quadrature(), ArgumentError);
}
