#pragma once

#include <cmath>

#include "chordlab/measures.hpp"

namespace chordlab::geometry {

using measures::PolarLine;

/// |sin(theta2 - theta1)| below this is treated as parallel.
inline constexpr double kParallelTolerance = 1e-12;
/// Foot distances closer than this make parallel lines coincident.
inline constexpr double kCoincidentTolerance = 1e-12;

struct PlanarPoint {
  double r = 0.0;
  double theta = 0.0;

  double x() const { return r * std::cos(theta); }
  double y() const { return r * std::sin(theta); }
};

/// Squared distance to the origin of the intersection of the lines
/// x cos(a_i) + y sin(a_i) = s_i, given the angle difference through its
/// cosine and squared sine. The signed offsets s_i may be negative, which
/// lets callers skip normalizing foot angles.
constexpr double intersection_distance_sq(double s1, double s2, double cos_delta,
                                          double sin_delta_sq) {
  return (s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * cos_delta) / sin_delta_sq;
}

/// True when the lines fail the parallel tolerance.
bool is_parallel(const PolarLine& l1, const PolarLine& l2);

/// Intersection point of two lines. Throws CoincidentLinesError for the same
/// line twice and ParallelLinesError for distinct parallel lines.
PlanarPoint intersect(const PolarLine& l1, const PolarLine& l2);

/// Distance of the intersection point to the origin, skipping the angle.
double distance_only(const PolarLine& l1, const PolarLine& l2);

}  // namespace chordlab::geometry
