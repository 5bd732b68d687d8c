#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rendezvous/geometry.hpp"

using namespace rendezvous;

namespace {

void expect_point_near(const Point& p, std::initializer_list<double> want, double tol = 1e-12) {
  ASSERT_EQ(p.dim(), want.size());
  std::size_t a = 0;
  for (double w : want) EXPECT_NEAR(p[a++], w, tol) << "axis " << a - 1;
}

}  // namespace

TEST(Point, ArithmeticAndMismatch) {
  const Point a{1, 2};
  const Point b{3, -1};
  EXPECT_EQ(a + b, (Point{4, 1}));
  EXPECT_EQ(a - b, (Point{-2, 3}));
  EXPECT_EQ(a * 2.0, (Point{2, 4}));
  EXPECT_THROW(a + Point({1, 2, 3}), std::domain_error);
}

TEST(Point, NormsAndVersor) {
  const Point v{3, -4};
  EXPECT_DOUBLE_EQ(norm(v), 5.0);
  EXPECT_DOUBLE_EQ(norm(v, Norm::inf), 4.0);
  expect_point_near(vers(v), {0.6, -0.8});
  EXPECT_EQ(vers(Point{0, 0}), (Point{0, 0}));
}

TEST(MinimalEnclosingBall, Singleton) {
  const std::vector<Point> pts{{0, 0}};
  const Ball b = minimal_enclosing_ball(pts);
  expect_point_near(b.center, {0, 0});
  EXPECT_EQ(b.radius, 0.0);
}

TEST(MinimalEnclosingBall, TwoPointDiameter) {
  const std::vector<Point> pts{{-1, 0}, {1, 0}};
  const Ball b = minimal_enclosing_ball(pts);
  expect_point_near(b.center, {0, 0});
  EXPECT_NEAR(b.radius, 1.0, 1e-12);
}

TEST(MinimalEnclosingBall, TriangleMatchesSubsetSearch) {
  const std::vector<Point> pts{{0, 0}, {2, 0}, {1, 1.8}};
  const Ball b = minimal_enclosing_ball(pts);
  const auto ref = oracle::brute_force_meb(pts);
  EXPECT_NEAR(b.radius, ref.radius, 1e-9);
  EXPECT_NEAR(b.center[0], ref.center[0], 1e-9);
  EXPECT_NEAR(b.center[1], ref.center[1], 1e-9);
  // Acute triangle: circumcircle. Center (1, y) with 1 + y^2 = (1.8 - y)^2.
  EXPECT_NEAR(b.center[1], (1.8 * 1.8 - 1.0) / 3.6, 1e-12);
}

TEST(MinimalEnclosingBall, Errors) {
  EXPECT_THROW(minimal_enclosing_ball(std::vector<Point>{}), std::domain_error);
  EXPECT_THROW(minimal_enclosing_ball(std::vector<Point>{{0, 0}, {1, 1, 1}}), std::domain_error);
  EXPECT_THROW(minimal_enclosing_orthotope(std::vector<Point>{}), std::domain_error);
  EXPECT_THROW(pointset_diameter(std::vector<Point>{}), std::domain_error);
}

TEST(MinimalEnclosingBall, RandomAgainstSubsetOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::size_t n = 1 + trial % 9;
    const auto pts = trial % 4 == 0 ? oracle::lattice_points(rng, n, d) : oracle::random_points(rng, n, d);
    const Ball b = minimal_enclosing_ball(pts);
    const auto ref = oracle::brute_force_meb(pts);
    ASSERT_NEAR(b.radius, ref.radius, 1e-9) << "trial " << trial;
    for (std::size_t a = 0; a < d; ++a) ASSERT_NEAR(b.center[a], ref.center[a], 1e-7) << "trial " << trial;
    for (const Point& p : pts) ASSERT_TRUE(b.contains(p));
  }
}

TEST(MinimalEnclosingBall, MonotoneUnderInsertion) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto pts = oracle::random_points(rng, 10, 2);
    std::vector<Point> prefix;
    double last = 0.0;
    for (const Point& p : pts) {
      prefix.push_back(p);
      const double r = minimal_enclosing_ball(prefix).radius;
      ASSERT_GE(r, last - 1e-12);
      last = r;
    }
  }
}

TEST(MebBoundary, InteriorPointExcluded) {
  const std::vector<Point> pts{{-1, 0}, {1, 0}, {0, 0.5}};
  const auto s = meb_boundary(pts);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Point{-1, 0}));
  EXPECT_EQ(s[1], (Point{1, 0}));
}

TEST(MebBoundary, Singleton) {
  const std::vector<Point> pts{{0, 0}};
  EXPECT_EQ(meb_boundary(pts), pts);
}

TEST(MebBoundary, SupportReproducesBall) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const auto pts = trial % 3 == 0 ? oracle::lattice_points(rng, 6, d, 2) : oracle::random_points(rng, 6, d);
    const auto s = meb_boundary(pts);
    ASSERT_LE(s.size(), d + 1);
    const auto full = oracle::brute_force_meb(pts);
    const auto sub = oracle::brute_force_meb(s);
    ASSERT_NEAR(full.radius, sub.radius, 1e-9) << "trial " << trial;
    for (std::size_t a = 0; a < d; ++a) ASSERT_NEAR(full.center[a], sub.center[a], 1e-7);
  }
}

TEST(MebBoundary, CosphericalSquareKeepsAtMostThree) {
  const std::vector<Point> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto s = meb_boundary(pts);
  EXPECT_LE(s.size(), 3u);
  EXPECT_NEAR(minimal_enclosing_ball(s).radius, 1.0, 1e-12);
}

TEST(MinimalEnclosingOrthotope, Examples) {
  const Orthotope two = minimal_enclosing_orthotope(std::vector<Point>{{0, 0}, {2, 4}});
  EXPECT_EQ(two.lo, (Point{0, 0}));
  EXPECT_EQ(two.hi, (Point{2, 4}));

  const Orthotope one = minimal_enclosing_orthotope(std::vector<Point>{{1, 1}});
  EXPECT_EQ(one.lo, (Point{1, 1}));
  EXPECT_EQ(one.hi, (Point{1, 1}));

  const Orthotope four = minimal_enclosing_orthotope(std::vector<Point>{{0, 0}, {2, 1}, {1, 5}, {-3, 2}});
  EXPECT_EQ(four.lo, (Point{-3, 0}));
  EXPECT_EQ(four.hi, (Point{2, 5}));
  EXPECT_EQ(four.side(0), 5.0);
  EXPECT_EQ(four.max_side(), 5.0);
}

TEST(Centers, Examples) {
  expect_point_near(orthotope_center(Orthotope{{0, 0}, {2, 4}}), {1, 2});
  expect_point_near(ball_center(Ball{{3, 3}, 2}), {3, 3});
  expect_point_near(orthotope_center(minimal_enclosing_orthotope(std::vector<Point>{{0, 0}, {2, 4}, {1, 1}})), {1, 2});
}

TEST(PointsetDiameter, Examples) {
  const std::vector<Point> pts{{0, 0}, {3, 4}};
  EXPECT_DOUBLE_EQ(pointset_diameter(pts), 5.0);
  EXPECT_DOUBLE_EQ(pointset_diameter(pts, Norm::inf), 4.0);
  EXPECT_EQ(pointset_diameter(std::vector<Point>{{7, 7}}), 0.0);
}

TEST(PointsetDiameter, AllPairs) {
  std::mt19937_64 rng(14);
  const auto pts = oracle::random_points(rng, 5, 2);
  double best = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      best = std::max(best, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
    }
  }
  EXPECT_NEAR(pointset_diameter(pts), best, 1e-12);
}

TEST(ShapeEquality, Tolerance) {
  EXPECT_TRUE(same_ball(Ball{{0, 0}, 1}, Ball{{1e-10, 0}, 1 + 1e-10}));
  EXPECT_FALSE(same_ball(Ball{{0, 0}, 1}, Ball{{1e-6, 0}, 1}));
  EXPECT_TRUE(same_orthotope(Orthotope{{0, 0}, {1, 1}}, Orthotope{{0, 0}, {1, 1 + 1e-10}}));
  EXPECT_FALSE(same_orthotope(Orthotope{{0, 0}, {1, 1}}, Orthotope{{0, 0}, {1, 1.1}}));
}
