#include "chordlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chordlab/errors.hpp"

namespace chordlab::specfun {
namespace {

using std::numbers::pi;

[[noreturn]] void throw_unconverged(const char* what, std::size_t terms) {
  throw ConvergenceError(std::string(what) + ": no convergence after " +
                         std::to_string(terms) + " terms");
}

// sum_{k>=1} x^k / k^2 for 0 <= x <= 1/2.
double li2_series(double x, const SeriesConfig& cfg) {
  if (x == 0.0) return 0.0;
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t k = 1; k <= cfg.max_terms; ++k) {
    power *= x;
    const double kd = static_cast<double>(k);
    sum += power / (kd * kd);
    const double next = power * x / ((kd + 1.0) * (kd + 1.0));
    if (next / (1.0 - x) <= cfg.tolerance) return sum;
  }
  throw_unconverged("li2", cfg.max_terms);
}

// sum_{n>=1} (2y)^{2n} / (n^2 C(2n,n)) for y^2 <= 1/2, halved.
double asin_sq_series(double y, const SeriesConfig& cfg) {
  const double y2 = y * y;
  if (y2 == 0.0) return 0.0;
  double term = 2.0 * y2;  // n = 1
  double sum = 0.0;
  for (std::size_t n = 1; n <= cfg.max_terms; ++n) {
    sum += term;
    const double nd = static_cast<double>(n);
    term *= 2.0 * y2 * nd * nd / ((nd + 1.0) * (2.0 * nd + 1.0));
    if (0.5 * term / (1.0 - y2) <= cfg.tolerance) return 0.5 * sum;
  }
  throw_unconverged("asin_sq", cfg.max_terms);
}

// Partial sums of the I0 series. `scale` multiplies every term so the scaled
// variant reuses the same loop for x <= kScaledSeriesCutover.
double i0_series(double x, double scale, const SeriesConfig& cfg) {
  const double q = 0.25 * x * x;
  double term = scale;
  double sum = 0.0;
  for (std::size_t k = 0; k < cfg.max_terms; ++k) {
    sum += term;
    const double kd = static_cast<double>(k);
    term *= q / ((kd + 1.0) * (kd + 1.0));
    const double next_ratio = q / ((kd + 2.0) * (kd + 2.0));
    if (next_ratio < 1.0) {
      const double tail = term / (1.0 - next_ratio);
      if (tail <= cfg.tolerance * std::max(1.0, sum / scale) * scale) return sum;
    }
  }
  throw_unconverged("bessel_i0", cfg.max_terms);
}

// Large-argument expansion e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k a_k / x^k,
// a_k = ((2k-1)!!)^2 / (k! 8^k). The terms shrink until k ~ 2x and the
// smallest one is of order e^{-2x}, so above the cutover the expansion is
// exact to double precision after a few dozen terms.
double i0_scaled_asymptotic(double x, const SeriesConfig& cfg) {
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t k = 1; k < cfg.max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double ratio = (2.0 * kd - 1.0) * (2.0 * kd - 1.0) / (8.0 * kd * x);
    if (ratio >= 1.0) break;  // past the smallest term
    term *= ratio;
    sum += term;
    if (term <= 0.25 * cfg.tolerance * sum) return sum / std::sqrt(2.0 * pi * x);
  }
  throw_unconverged("bessel_i0_scaled", cfg.max_terms);
}

}  // namespace

void SeriesConfig::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("SeriesConfig: tolerance must be > 0");
  if (max_terms < 1) throw DomainError("SeriesConfig: max_terms must be >= 1");
}

double li2(double x, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("li2: argument outside [0, 1]");
  if (x <= 0.5) return li2_series(x, cfg);
  if (x == 1.0) return pi * pi / 6.0;
  const double y = 1.0 - x;  // exact for x in [1/2, 1]
  return pi * pi / 6.0 - std::log(x) * std::log(y) - li2_series(y, cfg);
}

double bessel_i0(double x, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(x >= 0.0)) throw DomainError("bessel_i0: argument must be >= 0");
  return i0_series(x, 1.0, cfg);
}

double bessel_i0_scaled(double x, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(x >= 0.0)) throw DomainError("bessel_i0_scaled: argument must be >= 0");
  if (!std::isfinite(x)) return 0.0;
  if (x <= kScaledSeriesCutover) return i0_series(x, std::exp(-x), cfg);
  return i0_scaled_asymptotic(x, cfg);
}

double asin_sq(double x, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("asin_sq: argument outside [-1, 1]");
  const double y = std::abs(x);
  if (y * y <= 0.5) return asin_sq_series(y, cfg);
  // An error e in asin(c)^2 becomes about (pi/2) e / c after the reflection.
  const double complement = std::sqrt((1.0 - y) * (1.0 + y));
  SeriesConfig inner = cfg;
  inner.tolerance = cfg.tolerance * complement / pi;
  const double angle = 0.5 * pi - std::sqrt(asin_sq_series(complement, inner));
  return angle * angle;
}

double central_binomial_ratio(unsigned n) {
  double ratio = 1.0;
  for (unsigned k = 1; k <= n; ++k)
    ratio *= static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
  return ratio;
}

double wallis_even(unsigned n) { return 0.5 * pi * central_binomial_ratio(n); }

}  // namespace chordlab::specfun
