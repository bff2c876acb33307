#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "chordlab/distribution.hpp"
#include "chordlab/errors.hpp"
#include "oracles.hpp"

using namespace chordlab;
using namespace chordlab::distribution;
using measures::MeasureKind;
using measures::TabulatedCdf;
using std::numbers::pi;

namespace {

const double kTailConstant = 16.0 / (pi * pi * pi);

RadialMeasure builtin(MeasureKind k) { return RadialMeasure::builtin(k); }

// Piecewise-linear table of a builtin CDF on a uniform grid.
RadialMeasure tabulate_measure(MeasureKind k, double upper, int cells) {
  const auto m = builtin(k);
  std::vector<double> t, F;
  for (int i = 0; i <= cells; ++i) {
    const double x = upper * i / cells;
    t.push_back(x);
    F.push_back(i == cells ? 1.0 : m.cdf(x));
  }
  return RadialMeasure::tabulated(TabulatedCdf(t, F));
}

double central_difference(const std::function<double(double)>& f, double r, double h) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

}  // namespace

TEST(Endpoints, DilogBranch) {
  for (double r : {0.0, 0.1, 0.35, 0.6, 0.9, 1.0}) {
    const double expected = 2.0 / (pi * pi) * static_cast<double>(oracle::li2_direct(r * r));
    EXPECT_NEAR(cdf_endpoints(r), expected, 1e-14) << r;
  }
  EXPECT_NEAR(cdf_endpoints(1.0), 1.0 / 3.0, 1e-15);
}

TEST(Endpoints, SpecialValueAtInverseSqrtTwo) {
  const double lg = std::log(2.0) / pi;
  EXPECT_NEAR(cdf_endpoints(1.0 / std::sqrt(2.0)), 1.0 / 6.0 - lg * lg, 1e-12);
}

TEST(Endpoints, QuadratureBranchAgainstSimpson) {
  for (double r : {1.2, 2.0, 10.0}) {
    EXPECT_NEAR(cdf_endpoints(r), static_cast<double>(oracle::endpoints_cdf_simpson(r)), 1e-11)
        << r;
  }
}

TEST(Endpoints, ContinuousAcrossUnitRadius) {
  const double below = cdf_endpoints(std::nextafter(1.0, 0.0));
  const double above = cdf_endpoints(std::nextafter(1.0, 2.0));
  EXPECT_NEAR(below, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(above, 1.0 / 3.0, 1e-12);
}

TEST(Endpoints, TailComplementsCdf) {
  for (double r : {0.5, 1.0, 1.5, 4.0, 50.0}) EXPECT_NEAR(cdf_endpoints(r) + tail_endpoints(r), 1.0, 1e-12);
  EXPECT_EQ(tail_endpoints(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(cdf_endpoints(std::numeric_limits<double>::infinity()), 1.0);
}

TEST(Endpoints, HeavyTailConstant) {
  EXPECT_NEAR(endpoints_tail_constant(), kTailConstant, 1e-14);
  for (double r : {1e2, 1e3, 1e5}) {
    const double scaled = r * tail_endpoints(r);
    EXPECT_NEAR(scaled / kTailConstant, 1.0, 1.0 / r) << r;
  }
}

TEST(Endpoints, DensityMatchesDifferences) {
  for (double r : {0.2, 0.7, 0.95, 1.05, 1.5, 3.0, 20.0}) {
    const double h = 1e-5 * r;
    const double fd = central_difference([](double x) { return cdf_endpoints(x); }, r, h);
    EXPECT_NEAR(density_endpoints(r), fd, 1e-6 * std::max(1.0, fd)) << r;
  }
  EXPECT_EQ(density_endpoints(0.0), 0.0);
  EXPECT_THROW(density_endpoints(1.0), SingularityError);
  EXPECT_THROW(cdf_endpoints(-1.0), DomainError);
}

TEST(Bertrand, UniformRadiusBranches) {
  EXPECT_DOUBLE_EQ(cdf_uniform_radius(0.5), 0.125);
  EXPECT_NEAR(cdf_uniform_radius(std::nextafter(1.0, 2.0)), 0.5, 1e-12);
  // Closed form and tail series meet at r = 2.
  EXPECT_NEAR(cdf_uniform_radius(std::nextafter(2.0, 3.0)), cdf_uniform_radius(2.0), 1e-14);
  EXPECT_NEAR(cdf_uniform_radius(1e8), 1.0, 1e-8);
  EXPECT_EQ(cdf_uniform_radius(std::numeric_limits<double>::infinity()), 1.0);
}

TEST(Bertrand, UniformMidpointBranches) {
  EXPECT_DOUBLE_EQ(cdf_uniform_midpoint(0.5), 3.0 / 128.0);
  EXPECT_NEAR(cdf_uniform_midpoint(std::nextafter(1.0, 2.0)), 0.375, 1e-12);
  EXPECT_NEAR(cdf_uniform_midpoint(std::nextafter(2.0, 3.0)), cdf_uniform_midpoint(2.0), 1e-14);
}

TEST(Bertrand, TailsDecayLikeOneOverR) {
  // Far intersections need nearly parallel lines: |sin d| < |t1 -+ t2| / r
  // near d = 0 and d = pi, so 1 - P ~ (2/pi) E[max(t1, t2)] / r, with
  // E[max] = 2/3 for uniform t and 4/5 for density 2t.
  const double r = 1e4;
  EXPECT_NEAR(r * (1.0 - cdf_uniform_radius(r)), 4.0 / (3.0 * pi), 1e-6);
  EXPECT_NEAR(r * (1.0 - cdf_uniform_midpoint(r)), 8.0 / (5.0 * pi), 1e-6);
}

TEST(Gaussian, BesselFormAgainstQuadrature) {
  for (double r : {0.01, 0.5, 1.0, 2.0, 5.0, 9.0, 30.0})
    EXPECT_NEAR(cdf_gaussian(r), cdf_gaussian_integral(r), 1e-10) << r;
  EXPECT_EQ(cdf_gaussian(0.0), 0.0);
}

TEST(Transform, ReproducesClosedForms) {
  for (double r : {0.1, 0.25, 0.75, 1.0, 1.5, 3.0, 12.0}) {
    EXPECT_NEAR(transform_cdf(builtin(MeasureKind::UniformRadius), r), cdf_uniform_radius(r), 1e-10);
    EXPECT_NEAR(transform_cdf(builtin(MeasureKind::UniformMidpoint), r), cdf_uniform_midpoint(r), 1e-10);
    EXPECT_NEAR(transform_cdf(builtin(MeasureKind::UniformEndpoints), r), cdf_endpoints(r), 1e-10);
    EXPECT_NEAR(transform_cdf(builtin(MeasureKind::Rayleigh), r), cdf_gaussian(r), 1e-10);
  }
}

TEST(Transform, TabulatedExactForPiecewiseLinear) {
  // A two-point table is exactly the uniform-radius law.
  const auto flat = RadialMeasure::tabulated(TabulatedCdf({0.0, 1.0}, {0.0, 1.0}));
  for (double r : {0.3, 1.0, 1.7, 5.0})
    EXPECT_NEAR(transform_cdf(flat, r), cdf_uniform_radius(r), 1e-14) << r;
}

TEST(Transform, TabulatedApproximatesBuiltins) {
  const auto mid = tabulate_measure(MeasureKind::UniformMidpoint, 1.0, 2000);
  const auto ends = tabulate_measure(MeasureKind::UniformEndpoints, 1.0, 20000);
  for (double r : {0.4, 1.0, 2.5}) {
    EXPECT_NEAR(transform_cdf(mid, r), cdf_uniform_midpoint(r), 1e-6);
    EXPECT_NEAR(transform_cdf(ends, r), cdf_endpoints(r), 1e-4);
  }
}

TEST(Transform, DensityMatchesDifferences) {
  const auto table = RadialMeasure::tabulated(TabulatedCdf({0.0, 0.3, 1.0, 2.0}, {0.0, 0.1, 0.7, 1.0}));
  for (const auto& m : {builtin(MeasureKind::UniformRadius), builtin(MeasureKind::UniformMidpoint),
                        builtin(MeasureKind::Rayleigh), table}) {
    for (double r : {0.2, 0.8, 1.6, 4.0}) {
      const double fd =
          central_difference([&](double x) { return transform_cdf(m, x); }, r, 1e-5 * r);
      EXPECT_NEAR(transform_density(m, r), fd, 1e-6 * std::max(1.0, fd))
          << measures::to_string(m.kind()) << ' ' << r;
    }
  }
}

TEST(Identity, ThreeRoutesAgree) {
  for (int i = 0; i <= 10; ++i) {
    const double r = 0.1 * i;
    const auto check = verify_identity(r);
    EXPECT_LE(check.abs_err, 1e-12) << r;
    EXPECT_NEAR(check.rhs, 2.0 / (pi * pi) * static_cast<double>(oracle::li2_direct(r * r)), 1e-14);
  }
  EXPECT_THROW(verify_identity(1.2), DomainError);
}

TEST(Region, SectorProbability) {
  const auto m = builtin(MeasureKind::UniformEndpoints);
  EXPECT_NEAR(region_probability(m, 0.0, 1.0, 0.0, pi / 2), 1.0 / 12.0, 1e-14);
  EXPECT_NEAR(region_probability(m, 0.0, std::numeric_limits<double>::infinity(), 0.0, 2 * pi), 1.0,
              1e-15);
  EXPECT_NEAR(region_probability(m, 1.0, 2.0, 1.0, 1.0 + pi), 0.5 * (cdf_endpoints(2.0) - 1.0 / 3.0),
              1e-14);
  EXPECT_THROW(region_probability(m, 1.0, 0.5, 0.0, 1.0), DomainError);
  EXPECT_THROW(region_probability(m, 0.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(region_probability(m, 0.0, 1.0, 0.0, 7.0), DomainError);
}

TEST(Grid, Spacing) {
  const auto lin = make_grid(0.0, 2.0, 41, false);
  ASSERT_EQ(lin.size(), 41u);
  EXPECT_EQ(lin[20], 1.0);
  const auto lg = make_grid(1.0, 1000.0, 4, true);
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_EQ(lg.back(), 1000.0);
  EXPECT_THROW(make_grid(0.0, 0.0, 2, false), DomainError);
  EXPECT_THROW(make_grid(0.0, 1.0, 1, false), DomainError);
  EXPECT_THROW(make_grid(0.0, 1.0, 5, true), DomainError);
}

TEST(Curves, ProvenanceAndSingularitySkip) {
  const auto m = builtin(MeasureKind::UniformEndpoints);
  EXPECT_EQ(tabulate_cdf(m, {0.0, 0.5, 1.0}).provenance, Provenance::ClosedForm);
  EXPECT_EQ(tabulate_cdf(m, {0.0, 2.0}).provenance, Provenance::Quadrature);
  const auto density = tabulate_density(m, {0.5, 1.0, 1.5});
  ASSERT_EQ(density.grid.size(), 2u);
  EXPECT_EQ(density.grid[1].first, 1.5);
}

TEST(Curves, ValidateRejectsBrokenCurves) {
  CdfCurve c;
  c.grid = {{0.0, 0.2}, {1.0, 0.1}};
  EXPECT_THROW(c.validate(), DomainError);
  c.grid = {{0.0, 0.0}, {1.0, 1.5}};
  EXPECT_THROW(c.validate(), DomainError);
  c.grid = {{1.0, 0.0}, {0.5, 0.5}};
  EXPECT_THROW(c.validate(), DomainError);
}

// Random grids, every model: values stay in [0, 1] and never decrease.
TEST(DistributionProperty, CdfMonotoneInUnitRange) {
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> step(0.7);
  const auto table = RadialMeasure::tabulated(TabulatedCdf({0.0, 0.2, 0.9, 1.4}, {0.0, 0.05, 0.8, 1.0}));
  std::vector<RadialMeasure> models = {builtin(MeasureKind::UniformRadius),
                                       builtin(MeasureKind::UniformMidpoint),
                                       builtin(MeasureKind::UniformEndpoints),
                                       builtin(MeasureKind::Rayleigh), table};
  for (const auto& m : models) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> grid{0.0};
      while (grid.size() < 60) grid.push_back(grid.back() + step(rng));
      const auto curve = tabulate_cdf(m, grid);
      EXPECT_NO_THROW(curve.validate());
      for (std::size_t i = 1; i < curve.grid.size(); ++i) {
        EXPECT_GE(curve.grid[i].second, curve.grid[i - 1].second);
        EXPECT_LE(curve.grid[i].second, 1.0);
        EXPECT_GE(curve.grid[i].second, 0.0);
      }
    }
  }
}
