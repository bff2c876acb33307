#include "chordlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chordlab/errors.hpp"
#include "chordlab/specfun.hpp"

namespace chordlab::distribution {
namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 0.5 * pi;
constexpr double k16OverPi3 = 16.0 / (pi * pi * pi);

void require_radius(double r, const char* what) {
  if (!(r >= 0.0)) throw DomainError(std::string(what) + ": radius must be >= 0");
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// sum_k c_k x^{2k+1} / (2k + offset), c_k the arcsin Taylor coefficients.
// Used for the tails of the uniform-radius/midpoint laws, x = 1/r <= 1/2.
double arcsin_moment_series(double x, double offset) {
  double central = 1.0;  // C(2k,k)/4^k
  double power = x;      // x^{2k+1}
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double term = central / (2.0 * k + 1.0) * power / (2.0 * k + offset);
    sum += term;
    if (term < 1e-18 * sum) break;
    central *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    power *= x * x;
  }
  return sum;
}

// Antiderivatives of acos(t/r) and t acos(t/r), up to constants.
double acos_moment0(double x, double r) {
  return x * std::acos(clamp_unit(x / r)) - std::sqrt(std::max(r * r - x * x, 0.0));
}
double acos_moment1(double x, double r) {
  const double root = std::sqrt(std::max(r * r - x * x, 0.0));
  return 0.5 * x * x * std::acos(clamp_unit(x / r)) +
         0.25 * r * r * std::asin(clamp_unit(x / r)) - 0.25 * x * root;
}

// Antiderivatives of t / sqrt(r^2 - t^2) and t^2 / sqrt(r^2 - t^2).
double root_moment1(double x, double r) { return -std::sqrt(std::max(r * r - x * x, 0.0)); }
double root_moment2(double x, double r) {
  return 0.5 * r * r * std::asin(clamp_unit(x / r)) -
         0.5 * x * std::sqrt(std::max(r * r - x * x, 0.0));
}

double tabulated_transform_cdf(const measures::TabulatedCdf& table, double r) {
  const auto& t = table.abscissae();
  const auto& F = table.values();
  double total = 0.0;
  for (std::size_t i = 0; i < table.cells() && t[i] < r; ++i) {
    const double lo = t[i];
    const double hi = std::min(t[i + 1], r);
    const double f = table.slope(i);
    if (f == 0.0) continue;
    const double intercept = F[i] - f * t[i];  // F(t) = intercept + f t on the cell
    total += f * (intercept * (acos_moment0(hi, r) - acos_moment0(lo, r)) +
                  f * (acos_moment1(hi, r) - acos_moment1(lo, r)));
  }
  return std::clamp(4.0 / pi * total, 0.0, 1.0);
}

double tabulated_transform_density(const measures::TabulatedCdf& table, double r) {
  const auto& t = table.abscissae();
  const auto& F = table.values();
  double total = 0.0;
  for (std::size_t i = 0; i < table.cells() && t[i] < r; ++i) {
    const double lo = t[i];
    const double hi = std::min(t[i + 1], r);
    const double f = table.slope(i);
    if (f == 0.0) continue;
    const double intercept = F[i] - f * t[i];
    total += f * (intercept * (root_moment1(hi, r) - root_moment1(lo, r)) +
                  f * (root_moment2(hi, r) - root_moment2(lo, r)));
  }
  // t / sqrt(1 - t^2/r^2) = r t / sqrt(r^2 - t^2)
  return 4.0 / (pi * r) * total;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Quadrature: return "quadrature";
    case Provenance::Empirical: return "empirical";
  }
  return "unknown";
}

void CdfCurve::validate() const {
  double prev_r = -1.0;
  double prev_v = 0.0;
  for (const auto& [r, v] : grid) {
    if (!(r >= 0.0) || !(r > prev_r)) throw DomainError("CdfCurve: radii must increase from 0");
    if (quantity == Quantity::Cdf) {
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("CdfCurve: value outside [0, 1]");
      if (v < prev_v) throw DomainError("CdfCurve: values must be nondecreasing");
    }
    prev_r = r;
    prev_v = v;
  }
}

// ---------------------------------------------------------------------------
// Uniform endpoints

double cdf_endpoints(double r, const QuadratureSpec& q) {
  require_radius(r, "cdf_endpoints");
  if (r == kInf) return 1.0;
  if (r <= 1.0) return 2.0 / (pi * pi) * specfun::li2(r * r);
  // t = sin u removes the 1/sqrt(1 - t^2) endpoint singularity.
  const double integral = quadrature::integrate(
      [r](double u) { return u * std::acos(std::sin(u) / r); }, 0.0, kHalfPi, q);
  return std::clamp(k16OverPi3 * integral, 0.0, 1.0);
}

double tail_endpoints(double r, const QuadratureSpec& q) {
  require_radius(r, "tail_endpoints");
  if (r == kInf) return 0.0;
  if (r <= 1.0) return 1.0 - cdf_endpoints(r, q);
  const double integral = quadrature::integrate(
      [r](double u) { return u * std::asin(std::sin(u) / r); }, 0.0, kHalfPi, q);
  return k16OverPi3 * integral;
}

double density_endpoints(double r, const QuadratureSpec& q) {
  require_radius(r, "density_endpoints");
  if (r == 1.0) throw SingularityError("density_endpoints: density is unbounded at r = 1");
  if (r == 0.0 || r == kInf) return 0.0;
  if (r < 1.0) return -4.0 * std::log1p(-r * r) / (pi * pi * r);
  const double excess = (r - 1.0) * (r + 1.0);
  // t = sin u; sqrt(1 - t^2/r^2) = sqrt(cos^2 u + r^2 - 1) / r.
  const double integral = quadrature::integrate(
      [excess](double u) {
        const double c = std::cos(u);
        return u * std::sin(u) / std::sqrt(c * c + excess);
      },
      0.0, kHalfPi, q);
  return k16OverPi3 / r * integral;
}

double endpoints_tail_constant(const QuadratureSpec& q) {
  const double integral =
      quadrature::integrate([](double u) { return u * std::sin(u); }, 0.0, kHalfPi, q);
  return k16OverPi3 * integral;
}

// ---------------------------------------------------------------------------
// General transform

double transform_cdf(const RadialMeasure& m, double r, const QuadratureSpec& q) {
  require_radius(r, "transform_cdf");
  if (r == 0.0) return 0.0;
  if (r == kInf) return 1.0;
  if (const auto* table = m.table()) return tabulated_transform_cdf(*table, r);

  // With u = F(t) the integral is int_0^{F(r)} u acos(Q(u)/r) du. The
  // substitution u = U (1 - s^2) smooths the square-root behaviour of acos
  // at the upper limit.
  const double upper = m.cdf(r);
  if (upper == 0.0) return 0.0;
  const auto integrand = [&m, r, upper](double s) {
    const double u = upper * (1.0 - s * s);
    const double ratio = std::min(m.inv_cdf(u) / r, 1.0);
    return 2.0 * upper * s * u * std::acos(ratio);
  };
  const double integral = quadrature::integrate(integrand, 0.0, 1.0, q);
  return std::clamp(4.0 / pi * integral, 0.0, 1.0);
}

double transform_density(const RadialMeasure& m, double r, const QuadratureSpec& q) {
  require_radius(r, "transform_density");
  if (r == 0.0 || r == kInf) return 0.0;
  if (const auto* table = m.table()) return tabulated_transform_density(*table, r);

  const double upper = m.cdf(r);
  if (upper == 0.0) return 0.0;
  const auto integrand = [&m, r, upper](double s) {
    const double u = upper * (1.0 - s * s);
    const double ratio = std::min(m.inv_cdf(u) / r, 1.0);
    const double root = std::sqrt((1.0 - ratio) * (1.0 + ratio));
    if (root == 0.0) return 0.0;
    return 2.0 * upper * s * u * ratio / root;
  };
  // ratio = t/r absorbs one power of r from the 1/r^2 prefactor.
  const double integral = quadrature::integrate(integrand, 0.0, 1.0, q);
  return 4.0 / (pi * r) * integral;
}

// ---------------------------------------------------------------------------
// Closed forms

double cdf_uniform_radius(double r) {
  require_radius(r, "cdf_uniform_radius");
  if (r <= 1.0) return 0.5 * r * r;
  if (r == kInf) return 1.0;
  if (r <= 2.0) {
    const double root = std::sqrt((r - 1.0) * (r + 1.0));
    return (2.0 * std::acos(1.0 / r) + r * r * std::asin(1.0 / r) - root) / pi;
  }
  // Same expression rewritten as 1 - (4/pi) int_0^1 t asin(t/r) dt to avoid
  // cancelling terms of size r.
  return 1.0 - 4.0 / pi * arcsin_moment_series(1.0 / r, 3.0);
}

double cdf_uniform_midpoint(double r) {
  require_radius(r, "cdf_uniform_midpoint");
  if (r <= 1.0) return 0.375 * r * r * r * r;
  if (r == kInf) return 1.0;
  if (r <= 2.0) {
    const double r2 = r * r;
    const double root = std::sqrt((r - 1.0) * (r + 1.0));
    return 2.0 * std::acos(1.0 / r) / pi + 3.0 * r2 * r2 * std::asin(1.0 / r) / (4.0 * pi) -
           (3.0 * r2 + 2.0) * root / (4.0 * pi);
  }
  return 1.0 - 8.0 / pi * arcsin_moment_series(1.0 / r, 5.0);
}

double cdf_gaussian(double r) {
  require_radius(r, "cdf_gaussian");
  if (r == kInf) return 1.0;
  const double quarter = 0.25 * r * r;
  const double value = 1.0 - 2.0 * specfun::bessel_i0_scaled(quarter) +
                       specfun::bessel_i0_scaled(2.0 * quarter);
  return std::clamp(value, 0.0, 1.0);
}

double cdf_gaussian_integral(double r, const QuadratureSpec& q) {
  require_radius(r, "cdf_gaussian_integral");
  if (r == 0.0) return 0.0;
  if (r == kInf) return 1.0;
  // t = r cos(phi): acos(t/r) = phi and dt = -r sin(phi) dphi.
  const auto integrand = [r](double phi) {
    const double t = r * std::cos(phi);
    const double g = std::exp(-0.5 * t * t);
    return -std::expm1(-0.5 * t * t) * t * g * phi * r * std::sin(phi);
  };
  return 4.0 / pi * quadrature::integrate(integrand, 0.0, kHalfPi, q);
}

// ---------------------------------------------------------------------------
// Dispatch

double model_cdf(const RadialMeasure& m, double r, const QuadratureSpec& q) {
  switch (m.kind()) {
    case MeasureKind::UniformRadius: return cdf_uniform_radius(r);
    case MeasureKind::UniformMidpoint: return cdf_uniform_midpoint(r);
    case MeasureKind::UniformEndpoints: return cdf_endpoints(r, q);
    case MeasureKind::Rayleigh: return cdf_gaussian(r);
    case MeasureKind::Custom: return transform_cdf(m, r, q);
  }
  return 0.0;
}

double model_density(const RadialMeasure& m, double r, const QuadratureSpec& q) {
  if (m.kind() == MeasureKind::UniformEndpoints) return density_endpoints(r, q);
  return transform_density(m, r, q);
}

Provenance cdf_provenance(const RadialMeasure& m, double r_max) {
  switch (m.kind()) {
    case MeasureKind::UniformEndpoints:
      return r_max <= 1.0 ? Provenance::ClosedForm : Provenance::Quadrature;
    case MeasureKind::Custom: return Provenance::Quadrature;
    default: return Provenance::ClosedForm;
  }
}

double region_probability(const RadialMeasure& m, double r_lo, double r_hi, double theta_lo,
                          double theta_hi, const QuadratureSpec& q) {
  if (!(r_lo >= 0.0)) throw DomainError("region_probability: r_lo must be >= 0");
  if (!(r_hi >= r_lo)) throw DomainError("region_probability: r_hi must be >= r_lo");
  const double sweep = theta_hi - theta_lo;
  constexpr double two_pi = 2.0 * pi;
  if (!(sweep >= 0.0)) throw DomainError("region_probability: theta_hi must be >= theta_lo");
  if (sweep > two_pi * (1.0 + 1e-12))
    throw DomainError("region_probability: angular sweep exceeds 2*pi");
  const double radial = model_cdf(m, r_hi, q) - model_cdf(m, r_lo, q);
  return std::min(sweep, two_pi) / two_pi * radial;
}

IdentityCheck verify_identity(double r, const QuadratureSpec& q) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("verify_identity: r must lie in [0, 1]");
  IdentityCheck out;
  out.rhs = 2.0 / (pi * pi) * specfun::li2(r * r);
  if (r == 0.0) return out;

  // t = r sin v turns acos(t/r) into pi/2 - v; 1 - r^2 sin^2 v is written as
  // cos^2 v + (1 - r^2) sin^2 v so r = 1 stays exact.
  const double gap = (1.0 - r) * (1.0 + r);
  const auto angle_integrand = [r, gap](double v) {
    const double s = std::sin(v);
    const double c = std::cos(v);
    const double root = std::sqrt(c * c + gap * s * s);
    if (root == 0.0) return 0.0;
    return (kHalfPi - v) * std::asin(r * s) * r * c / root;
  };
  out.lhs = k16OverPi3 * quadrature::integrate(angle_integrand, 0.0, kHalfPi, q);

  const auto series_integrand = [r](double u) { return specfun::asin_sq(r * std::sin(u)); };
  out.intermediate =
      0.5 * k16OverPi3 * quadrature::integrate(series_integrand, 0.0, kHalfPi, q);

  out.abs_err = std::max(std::abs(out.lhs - out.rhs), std::abs(out.intermediate - out.rhs));
  return out;
}

// ---------------------------------------------------------------------------
// Tabulation

std::vector<double> make_grid(double min, double max, int steps, bool log_spaced) {
  if (!(min < max)) throw DomainError("grid: min must be < max");
  if (steps < 2) throw DomainError("grid: steps must be >= 2");
  if (!(min >= 0.0) || !std::isfinite(max)) throw DomainError("grid: radii must be finite and >= 0");
  if (log_spaced && !(min > 0.0)) throw DomainError("grid: log spacing needs min > 0");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double span = static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) {
    const double frac = static_cast<double>(i) / span;
    grid[static_cast<std::size_t>(i)] =
        log_spaced ? min * std::pow(max / min, frac) : min + (max - min) * frac;
  }
  grid.front() = min;
  grid.back() = max;
  return grid;
}

CdfCurve tabulate_cdf(const RadialMeasure& m, const std::vector<double>& radii,
                      const QuadratureSpec& q) {
  CdfCurve curve;
  curve.model_label = std::string(m.label());
  curve.quantity = Quantity::Cdf;
  curve.provenance = cdf_provenance(m, radii.empty() ? 0.0 : radii.back());
  curve.grid.reserve(radii.size());
  for (double r : radii) curve.grid.emplace_back(r, model_cdf(m, r, q));
  curve.validate();
  return curve;
}

CdfCurve tabulate_density(const RadialMeasure& m, const std::vector<double>& radii,
                          const QuadratureSpec& q) {
  CdfCurve curve;
  curve.model_label = std::string(m.label());
  curve.quantity = Quantity::Density;
  const bool closed = m.kind() == MeasureKind::UniformEndpoints &&
                      (radii.empty() || radii.back() < 1.0);
  curve.provenance = closed ? Provenance::ClosedForm : Provenance::Quadrature;
  for (double r : radii) {
    try {
      curve.grid.emplace_back(r, model_density(m, r, q));
    } catch (const SingularityError&) {
      // plotted curves skip the pole
    }
  }
  curve.validate();
  return curve;
}

}  // namespace chordlab::distribution
