#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chordlab/measures.hpp"
#include "chordlab/quadrature.hpp"

namespace chordlab::distribution {

using measures::MeasureKind;
using measures::RadialMeasure;
using quadrature::QuadratureSpec;

enum class Provenance { ClosedForm, Quadrature, Empirical };
enum class Quantity { Cdf, Density };

std::string_view to_string(Provenance p);

/// Sampled curve r -> value. For Quantity::Cdf the values are a distribution
/// function: inside [0, 1] and nondecreasing.
struct CdfCurve {
  std::string model_label;
  Quantity quantity = Quantity::Cdf;
  Provenance provenance = Provenance::ClosedForm;
  std::vector<std::pair<double, double>> grid;

  /// Throws DomainError when an invariant is broken.
  void validate() const;
};

/// Intersection distance law for chords with uniform endpoints (the Karamata
/// model). Closed form (2/pi^2) Li2(r^2) up to r = 1, quadrature above.
double cdf_endpoints(double r, const QuadratureSpec& q = {});

/// 1 - cdf_endpoints(r), integrated directly so the far tail keeps its
/// relative accuracy.
double tail_endpoints(double r, const QuadratureSpec& q = {});

/// Derivative of cdf_endpoints. Throws SingularityError at r = 1.
double density_endpoints(double r, const QuadratureSpec& q = {});

/// lim r * P(l > r) for the endpoints model, evaluated by quadrature of
/// (16/pi^3) int_0^1 t asin(t) / sqrt(1 - t^2) dt.
double endpoints_tail_constant(const QuadratureSpec& q = {});

/// P(l <= r) for two independent lines from G(m):
/// (4/pi) int_0^r F(t) F'(t) acos(t/r) dt.
/// Tabulated measures are integrated exactly cell by cell; the built-ins go
/// through quadrature in the probability variable u = F(t).
double transform_cdf(const RadialMeasure& m, double r, const QuadratureSpec& q = {});

/// d/dr of transform_cdf: (4/(pi r^2)) int_0^r F(t) F'(t) t / sqrt(1 - t^2/r^2) dt.
double transform_density(const RadialMeasure& m, double r, const QuadratureSpec& q = {});

/// Uniform-radius chords: r^2/2 on [0, 1], arccos/arcsin closed form above.
double cdf_uniform_radius(double r);

/// Uniform-midpoint chords: 3r^4/8 on [0, 1], arccos/arcsin closed form above.
double cdf_uniform_midpoint(double r);

/// Gaussian feet (Rayleigh distance):
/// 1 - 2 e^{-r^2/4} I0(r^2/4) + e^{-r^2/2} I0(r^2/2).
double cdf_gaussian(double r);

/// The same law by direct quadrature of its defining integral; independent of
/// the Bessel route and of transform_cdf.
double cdf_gaussian_integral(double r, const QuadratureSpec& q = {});

/// Best available CDF for a measure: closed forms for the built-ins,
/// transform_cdf for tabulated measures.
double model_cdf(const RadialMeasure& m, double r, const QuadratureSpec& q = {});

/// Density counterpart of model_cdf.
double model_density(const RadialMeasure& m, double r, const QuadratureSpec& q = {});

Provenance cdf_provenance(const RadialMeasure& m, double r_max);

/// Probability that the intersection point falls in the annulus sector
/// r_lo <= r <= r_hi, theta_lo <= theta <= theta_hi. The foot angle of the
/// intersection point is uniform and independent of its distance.
double region_probability(const RadialMeasure& m, double r_lo, double r_hi, double theta_lo,
                          double theta_hi, const QuadratureSpec& q = {});

struct IdentityCheck {
  double lhs = 0.0;           // quadrature of the acos * asin integral
  double intermediate = 0.0;  // (8/pi^3) int_0^{pi/2} asin(r sin u)^2 du
  double rhs = 0.0;           // (2/pi^2) Li2(r^2)
  double abs_err = 0.0;       // largest pairwise gap against rhs
};

/// Evaluates the dilogarithm identity for 0 <= r <= 1 through three routes.
IdentityCheck verify_identity(double r, const QuadratureSpec& q = {});

/// Radii from min to max inclusive, linear or logarithmic spacing.
std::vector<double> make_grid(double min, double max, int steps, bool log_spaced);

CdfCurve tabulate_cdf(const RadialMeasure& m, const std::vector<double>& radii,
                      const QuadratureSpec& q = {});

/// Density curve; radii where the density is singular are skipped.
CdfCurve tabulate_density(const RadialMeasure& m, const std::vector<double>& radii,
                          const QuadratureSpec& q = {});

}  // namespace chordlab::distribution
