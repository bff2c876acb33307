#include "chordlab/geometry.hpp"

#include <algorithm>

#include "chordlab/errors.hpp"

namespace chordlab::geometry {
namespace {

void check_not_parallel(const PolarLine& l1, const PolarLine& l2, double sin_delta) {
  if (std::abs(sin_delta) >= kParallelTolerance) return;
  // Antiparallel normals describe the same line only when both pass through
  // the origin; parallel normals need equal offsets.
  const double cos_delta = std::cos(l2.foot_angle - l1.foot_angle);
  const double offset_gap =
      cos_delta > 0.0 ? std::abs(l1.dist - l2.dist) : l1.dist + l2.dist;
  if (offset_gap <= kCoincidentTolerance) throw CoincidentLinesError("lines coincide");
  throw ParallelLinesError("lines are parallel");
}

}  // namespace

bool is_parallel(const PolarLine& l1, const PolarLine& l2) {
  return std::abs(std::sin(l2.foot_angle - l1.foot_angle)) < kParallelTolerance;
}

PlanarPoint intersect(const PolarLine& l1, const PolarLine& l2) {
  const double sin_delta = std::sin(l2.foot_angle - l1.foot_angle);
  check_not_parallel(l1, l2, sin_delta);
  // Cramer's rule on x cos(a_i) + y sin(a_i) = dist_i.
  const double c1 = std::cos(l1.foot_angle), s1 = std::sin(l1.foot_angle);
  const double c2 = std::cos(l2.foot_angle), s2 = std::sin(l2.foot_angle);
  const double x = (l1.dist * s2 - l2.dist * s1) / sin_delta;
  const double y = (l2.dist * c1 - l1.dist * c2) / sin_delta;
  const double r = std::hypot(x, y);
  return PlanarPoint{r, r == 0.0 ? 0.0 : measures::normalize_angle(std::atan2(y, x))};
}

double distance_only(const PolarLine& l1, const PolarLine& l2) {
  const double delta = l2.foot_angle - l1.foot_angle;
  const double sin_delta = std::sin(delta);
  check_not_parallel(l1, l2, sin_delta);
  const double r2 =
      intersection_distance_sq(l1.dist, l2.dist, std::cos(delta), sin_delta * sin_delta);
  // The numerator is nonnegative analytically; clamp rounding noise.
  return std::sqrt(std::max(r2, 0.0));
}

}  // namespace chordlab::geometry
