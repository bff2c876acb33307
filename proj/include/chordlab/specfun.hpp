#pragma once

#include <cstddef>

namespace chordlab::specfun {

/// Truncation control shared by every series in this module.
struct SeriesConfig {
  double tolerance = 1e-14;          // absolute truncation tolerance
  std::size_t max_terms = 1'000'000;  // hard cap on summed terms

  void validate() const;
};

/// Euler's dilogarithm Li2(x) = sum_{k>=1} x^k / k^2 on [0, 1].
///
/// The series is only summed on [0, 1/2]; larger arguments go through the
/// reflection Li2(x) + Li2(1-x) = pi^2/6 - log(x) log(1-x).
/// Throws DomainError outside [0, 1] and ConvergenceError when max_terms is
/// exhausted before the tail bound drops below the tolerance.
double li2(double x, const SeriesConfig& cfg = {});

/// Modified Bessel function I0(x) = sum (x^2/4)^k / (k!)^2 for x >= 0.
///
/// The tolerance is absolute while I0(x) <= 1 and relative to the running
/// sum above that; double precision cannot resolve 1e-14 absolute on values
/// of order 1e20.
double bessel_i0(double x, const SeriesConfig& cfg = {});

/// exp(-x) * I0(x), evaluated without forming exp(x) or I0(x) separately
/// once x exceeds kScaledSeriesCutover.
double bessel_i0_scaled(double x, const SeriesConfig& cfg = {});

inline constexpr double kScaledSeriesCutover = 25.0;

/// (arcsin x)^2 via 1/2 sum (2x)^{2n} / (n^2 C(2n, n)).
///
/// For |x| > 1/sqrt(2) the series is applied to sqrt(1 - x^2) and
/// arcsin(|x|) = pi/2 - arcsin(sqrt(1 - x^2)) is used, so every evaluation
/// sums a series with ratio at most 1/2.
double asin_sq(double x, const SeriesConfig& cfg = {});

/// Even Wallis integral int_0^1 x^{2n} / sqrt(1 - x^2) dx = (pi/2) C(2n,n)/4^n.
double wallis_even(unsigned n);

/// C(2n, n) / 4^n by multiplicative recurrence.
double central_binomial_ratio(unsigned n);

}  // namespace chordlab::specfun
