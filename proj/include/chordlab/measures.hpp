#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace chordlab::measures {

/// Angle reduced to [0, 2*pi).
double normalize_angle(double angle);

/// A line in foot-point coordinates: the closest point of the line to the
/// origin is dist * (cos foot_angle, sin foot_angle).
struct PolarLine {
  double dist = 0.0;
  double foot_angle = 0.0;

  /// Validates dist >= 0 and normalizes the angle.
  static PolarLine make(double dist, double foot_angle);
};

enum class MeasureKind { UniformRadius, UniformMidpoint, UniformEndpoints, Rayleigh, Custom };

std::string_view to_string(MeasureKind kind);

/// Accepts the CLI spellings: radius, midpoint, endpoints, gaussian/rayleigh,
/// plus the long uniform-* forms. Throws DomainError otherwise.
MeasureKind parse_kind(std::string_view name);

/// Piecewise-linear CDF through (t_i, F_i). F is 0 left of the table and 1
/// right of it; the density is the slope of the interpolant.
class TabulatedCdf {
 public:
  /// Jumps larger than this (an atom at the first abscissa) are rejected.
  static constexpr double kAtomTolerance = 1e-9;

  TabulatedCdf(std::vector<double> t, std::vector<double> F);

  /// Reads CSV with header `t,F`.
  static TabulatedCdf read_csv(std::istream& in);
  static TabulatedCdf read_csv_file(const std::string& path);

  double cdf(double t) const;
  double pdf(double t) const;
  double inv_cdf(double u) const;

  const std::vector<double>& abscissae() const { return t_; }
  const std::vector<double>& values() const { return F_; }
  std::size_t cells() const { return t_.size() - 1; }
  double slope(std::size_t cell) const;

 private:
  std::vector<double> t_;
  std::vector<double> F_;
};

/// Law of the foot distance of a rotationally invariant random line.
/// Immutable; copies share the tabulation of custom measures.
class RadialMeasure {
 public:
  static RadialMeasure builtin(MeasureKind kind);
  static RadialMeasure tabulated(TabulatedCdf table);

  MeasureKind kind() const { return kind_; }
  std::string_view label() const { return to_string(kind_); }

  double cdf(double t) const;
  double pdf(double t) const;
  /// Quantile function on [0, 1); inv_cdf(cdf(t)) == t inside the support.
  double inv_cdf(double u) const;
  /// 1 for the chord models, +inf for Rayleigh, the last abscissa for tables.
  double support_upper() const;

  const TabulatedCdf* table() const { return table_.get(); }

 private:
  explicit RadialMeasure(MeasureKind kind, std::shared_ptr<const TabulatedCdf> table = nullptr)
      : kind_(kind), table_(std::move(table)) {}

  MeasureKind kind_;
  std::shared_ptr<const TabulatedCdf> table_;
};

/// Draws a line from G(mu): the first uniform variate picks the foot
/// distance through the quantile function, the second the foot angle.
/// `next_uniform` is any callable returning doubles in [0, 1).
template <class UniformSource>
PolarLine sample_line(const RadialMeasure& m, UniformSource&& next_uniform) {
  const double u_dist = next_uniform();
  const double u_angle = next_uniform();
  // A zero distance keeps the uniform angle; that is the direction of the
  // line through the origin.
  return PolarLine{m.inv_cdf(u_dist), 2.0 * std::numbers::pi * u_angle};
}

/// Line through the unit-circle points at angles phi1 and phi2.
/// Throws DegenerateChordError when the two angles coincide mod 2*pi.
PolarLine chord_from_endpoints(double phi1, double phi2);

}  // namespace chordlab::measures
