#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chordlab/errors.hpp"
#include "chordlab/geometry.hpp"
#include "oracles.hpp"

using namespace chordlab;
using geometry::PolarLine;
using std::numbers::pi;

namespace {

// The same line in Cartesian form a x + b y = c.
oracle::Line cartesian(const PolarLine& l) {
  return {std::cos(static_cast<long double>(l.foot_angle)),
          std::sin(static_cast<long double>(l.foot_angle)), l.dist};
}

}  // namespace

TEST(Geometry, PerpendicularAxes) {
  const auto p = geometry::intersect(PolarLine::make(1.0, 0.0), PolarLine::make(2.0, pi / 2));
  EXPECT_NEAR(p.x(), 1.0, 1e-15);
  EXPECT_NEAR(p.y(), 2.0, 1e-15);
  EXPECT_NEAR(p.r, std::sqrt(5.0), 1e-15);
}

TEST(Geometry, LinesThroughOrigin) {
  const auto p = geometry::intersect(PolarLine::make(0.0, 0.3), PolarLine::make(0.0, 1.9));
  EXPECT_EQ(p.r, 0.0);
  EXPECT_EQ(geometry::distance_only(PolarLine::make(0.0, 0.3), PolarLine::make(0.0, 1.9)), 0.0);
}

TEST(Geometry, MatchesCartesianSolve) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 1.0), angle(0.0, 2 * pi);
  for (int i = 0; i < 5000; ++i) {
    const auto l1 = PolarLine::make(dist(rng), angle(rng));
    const auto l2 = PolarLine::make(dist(rng), angle(rng));
    if (std::abs(std::sin(l2.foot_angle - l1.foot_angle)) < 1e-3) continue;
    oracle::Point ref{};
    ASSERT_TRUE(oracle::solve(cartesian(l1), cartesian(l2), ref));
    const auto p = geometry::intersect(l1, l2);
    const double scale = 1.0 + static_cast<double>(std::hypot(ref.x, ref.y));
    EXPECT_NEAR(p.x(), static_cast<double>(ref.x), 1e-11 * scale);
    EXPECT_NEAR(p.y(), static_cast<double>(ref.y), 1e-11 * scale);
    EXPECT_NEAR(geometry::distance_only(l1, l2), p.r, 1e-11 * scale);
  }
}

TEST(Geometry, ParallelAndCoincident) {
  const auto a = PolarLine::make(0.5, 1.0);
  EXPECT_TRUE(geometry::is_parallel(a, PolarLine::make(0.2, 1.0)));
  EXPECT_THROW(geometry::intersect(a, PolarLine::make(0.2, 1.0)), ParallelLinesError);
  EXPECT_THROW(geometry::intersect(a, PolarLine::make(0.2, 1.0 + pi)), ParallelLinesError);
  EXPECT_THROW(geometry::intersect(a, a), CoincidentLinesError);
  EXPECT_THROW(geometry::distance_only(PolarLine::make(0.0, 1.0), PolarLine::make(0.0, 1.0 + pi)),
               CoincidentLinesError);
  EXPECT_FALSE(geometry::is_parallel(a, PolarLine::make(0.5, 1.001)));
}

// The intersection lies on both lines, hence at least as far out as either
// foot point.
TEST(GeometryProperty, DistanceBoundedBelowByFeet) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 3.0), angle(0.0, 2 * pi);
  for (int i = 0; i < 20000; ++i) {
    const auto l1 = PolarLine::make(dist(rng), angle(rng));
    const auto l2 = PolarLine::make(dist(rng), angle(rng));
    if (geometry::is_parallel(l1, l2)) continue;
    const double r = geometry::distance_only(l1, l2);
    EXPECT_GE(r * (1.0 + 1e-12) + 1e-12, std::max(l1.dist, l2.dist));
  }
}

TEST(GeometryProperty, RotationInvariance) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(0.0, 1.0), angle(0.0, 2 * pi);
  for (int i = 0; i < 5000; ++i) {
    const auto l1 = PolarLine::make(dist(rng), angle(rng));
    const auto l2 = PolarLine::make(dist(rng), angle(rng));
    if (std::abs(std::sin(l2.foot_angle - l1.foot_angle)) < 1e-3) continue;
    const double phi = angle(rng);
    const double r = geometry::distance_only(l1, l2);
    const double rotated = geometry::distance_only(PolarLine::make(l1.dist, l1.foot_angle + phi),
                                                   PolarLine::make(l2.dist, l2.foot_angle + phi));
    EXPECT_NEAR(rotated, r, 1e-9 * (1.0 + r));
    // The intersection point rotates along.
    const auto p = geometry::intersect(l1, l2);
    const auto q = geometry::intersect(PolarLine::make(l1.dist, l1.foot_angle + phi),
                                       PolarLine::make(l2.dist, l2.foot_angle + phi));
    EXPECT_NEAR(std::cos(q.theta - p.theta - phi), 1.0, 1e-9);
  }
}

TEST(Geometry, SignedOffsetsMatchNormalizedLines) {
  // Flipping the normal and the sign of the offset describes the same line.
  const double s1 = -0.4, s2 = 0.7, a1 = 0.2, a2 = 1.3;
  const double direct = geometry::intersection_distance_sq(s1, s2, std::cos(a2 - a1),
                                                           std::pow(std::sin(a2 - a1), 2));
  const double r = geometry::distance_only(PolarLine::make(-s1, a1 + pi), PolarLine::make(s2, a2));
  EXPECT_NEAR(std::sqrt(direct), r, 1e-14);
}
