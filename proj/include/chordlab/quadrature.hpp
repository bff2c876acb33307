#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "chordlab/errors.hpp"

namespace chordlab::quadrature {

enum class Rule { GaussLegendreAdaptive, TanhSinh };

struct QuadratureSpec {
  double abs_tol = 1e-12;
  int max_depth = 40;
  Rule rule = Rule::GaussLegendreAdaptive;

  void validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
    if (max_depth < 1) throw DomainError("QuadratureSpec: max_depth must be >= 1");
  }
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

inline constexpr std::size_t kMaxSegments = 1u << 15;

struct Segment {
  double lo, hi;
  Estimate est;
  int depth;
  bool operator<(const Segment& other) const { return est.error < other.est.error; }
};

// 7-point Gauss / 15-point Kronrod pair on [lo, hi] with the QUADPACK error
// heuristic. Nodes come from Boost so the tables are not duplicated here.
template <class F>
Estimate gauss_kronrod_15(const F& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::gauss;
  const auto& xk = gauss_kronrod<double, 15>::abscissa();
  const auto& wk = gauss_kronrod<double, 15>::weights();
  const auto& wg = gauss<double, 7>::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  double fv[15];
  fv[0] = f(center);
  for (int i = 1; i < 8; ++i) {
    fv[2 * i - 1] = f(center - half * xk[i]);
    fv[2 * i] = f(center + half * xk[i]);
  }

  double kronrod = wk[0] * fv[0];
  double gauss7 = wg[0] * fv[0];
  double abs_sum = wk[0] * std::abs(fv[0]);
  for (int i = 1; i < 8; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kronrod += wk[i] * pair;
    abs_sum += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 0) gauss7 += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = wk[0] * std::abs(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    asc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

  const double value = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double error = std::abs((kronrod - gauss7) * half);
  if (resasc != 0.0 && error != 0.0)
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    error = std::max(50.0 * eps * resabs, error);
  return {value, error};
}

template <class F>
Estimate adaptive_gauss_kronrod(const F& f, double a, double b, const QuadratureSpec& q) {
  std::priority_queue<Segment> work;
  std::vector<Segment> frozen;  // segments that reached max_depth
  Segment root{a, b, gauss_kronrod_15(f, a, b), 0};
  double total_value = root.est.value;
  double total_error = root.est.error;
  work.push(root);
  std::size_t segments = 1;

  while (total_error > q.abs_tol && !work.empty()) {
    Segment worst = work.top();
    work.pop();
    if (worst.depth >= q.max_depth || segments >= kMaxSegments) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left{worst.lo, mid, gauss_kronrod_15(f, worst.lo, mid), worst.depth + 1};
    Segment right{mid, worst.hi, gauss_kronrod_15(f, mid, worst.hi), worst.depth + 1};
    total_value += left.est.value + right.est.value - worst.est.value;
    total_error += left.est.error + right.est.error - worst.est.error;
    work.push(left);
    work.push(right);
    ++segments;
  }

  // Re-sum from scratch; the running totals drift after many updates.
  Estimate out;
  auto accumulate = [&](const Segment& s) {
    out.value += s.est.value;
    out.error += s.est.error;
  };
  for (const auto& s : frozen) accumulate(s);
  while (!work.empty()) {
    accumulate(work.top());
    work.pop();
  }
  return out;
}

}  // namespace detail

/// Integral of f over [a, b] with an error estimate. Does not throw on an
/// unmet tolerance; callers that need a hard guarantee use integrate().
template <class F>
Estimate integrate_estimate(const F& f, double a, double b, const QuadratureSpec& q = {}) {
  q.validate();
  if (a == b) return {};
  if (b < a) {
    Estimate e = integrate_estimate(f, b, a, q);
    return {-e.value, e.error};
  }
  if (q.rule == Rule::TanhSinh) {
    boost::math::quadrature::tanh_sinh<double> integrator(static_cast<std::size_t>(
        std::clamp(q.max_depth / 4, 4, 15)));
    double error = 0.0;
    const double value = integrator.integrate(f, a, b, q.abs_tol, &error);
    return {value, error};
  }
  return detail::adaptive_gauss_kronrod(f, a, b, q);
}

/// Integral of f over [a, b]; throws QuadratureError when the estimated error
/// exceeds abs_tol.
template <class F>
double integrate(const F& f, double a, double b, const QuadratureSpec& q = {}) {
  const Estimate e = integrate_estimate(f, a, b, q);
  if (!(e.error <= q.abs_tol) || !std::isfinite(e.value))
    throw QuadratureError("quadrature: estimated error " + std::to_string(e.error) +
                          " exceeds abs_tol " + std::to_string(q.abs_tol));
  return e.value;
}

}  // namespace chordlab::quadrature
