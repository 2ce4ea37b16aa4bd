#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rayleigh/io.hpp"
#include "rayleigh/rayleigh.hpp"

namespace {

using namespace rayleigh;
using Complex = std::complex<double>;

// Draws once at the largest radius and counts within each smaller one.
std::vector<double> mean_counts(const PowerSeriesSpec& spec, const std::vector<double>& radii, long trials, std::uint64_t seed,
                                std::vector<double>* arguments = nullptr) {
  std::vector<double> totals(radii.size(), 0.0);
  for (long t = 0; t < trials; ++t) {
    SeededRng rng(seed, static_cast<std::uint64_t>(t));
    const auto x = sample_power_series_zeros(spec, rng);
    for (const auto& z : x.points) {
      for (std::size_t i = 0; i < radii.size(); ++i) totals[i] += std::abs(z) <= radii[i];
      if (arguments) arguments->push_back(std::arg(z));
    }
  }
  for (auto& v : totals) v /= static_cast<double>(trials);
  return totals;
}

TEST(Ginibre, SinglePoint) {
  GinibreSpec spec;
  spec.k = 1;
  double sum_sq = 0.0;
  for (int t = 0; t < 4000; ++t) {
    SeededRng rng(1, static_cast<std::uint64_t>(t));
    const auto x = sample_ginibre(spec, rng);
    ASSERT_EQ(x.size(), 1u);
    sum_sq += std::norm(x.points[0]);
  }
  // E|z|^2 = 1 for a standard complex Gaussian
  EXPECT_NEAR(sum_sq / 4000, 1.0, 0.06);
}

TEST(Ginibre, ZeroRadiusIsEmpty) {
  GinibreSpec spec;
  spec.k = 30;
  spec.radius = 0.0;
  SeededRng rng(2);
  EXPECT_TRUE(sample_ginibre(spec, rng).empty());
}

TEST(Ginibre, SpecValidation) {
  GinibreSpec spec;
  spec.k = 0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.k = 16;
  spec.radius = -1.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.radius = 3.0;  // beyond sqrt(k)/2 = 2
  EXPECT_EQ(spec.warnings().size(), 1u);
  spec.radius = 1.0;
  EXPECT_TRUE(spec.warnings().empty());
}

TEST(Ginibre, CountNeverExceedsK) {
  GinibreSpec spec;
  spec.k = 12;
  for (int t = 0; t < 200; ++t) {
    SeededRng rng(3, static_cast<std::uint64_t>(t));
    EXPECT_EQ(sample_ginibre(spec, rng).size(), 12u);
  }
  spec.radius = 2.0;
  for (int t = 0; t < 200; ++t) {
    SeededRng rng(4, static_cast<std::uint64_t>(t));
    const auto x = sample_ginibre(spec, rng);
    EXPECT_LE(x.size(), 12u);
    for (const auto& z : x.points) EXPECT_LE(std::abs(z), 2.0);
  }
}

TEST(Ginibre, BulkMeanCount) {
  GinibreSpec spec;
  spec.k = 64;
  spec.radius = 2.0;
  const long trials = 2000;
  double total = 0.0, sq = 0.0;
  for (long t = 0; t < trials; ++t) {
    SeededRng rng(5, static_cast<std::uint64_t>(t));
    const double c = static_cast<double>(sample_ginibre(spec, rng).size());
    total += c;
    sq += c * c;
  }
  const double mean = total / trials;
  const double se = std::sqrt((sq / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, 4.0, 0.05 * 4.0);
  EXPECT_NEAR(mean, 4.0, 4 * se + 0.02);  // r = sqrt(k)/4 keeps the finite-k edge bias negligible
}

// The Hessenberg reduction has the same eigenvalue law as the dense matrix.
TEST(Ginibre, HessenbergMatchesDense) {
  GinibreSpec hess, dense;
  hess.k = dense.k = 40;
  hess.radius = dense.radius = 3.0;
  dense.model = GinibreModel::dense;
  const long trials = 3000;
  double a = 0.0, b = 0.0, a2 = 0.0, b2 = 0.0;
  for (long t = 0; t < trials; ++t) {
    SeededRng r1(6, static_cast<std::uint64_t>(t)), r2(7, static_cast<std::uint64_t>(t));
    const double x = static_cast<double>(sample_ginibre(hess, r1).size());
    const double y = static_cast<double>(sample_ginibre(dense, r2).size());
    a += x;
    b += y;
    a2 += x * x;
    b2 += y * y;
  }
  a /= trials;
  b /= trials;
  const double se = std::sqrt((a2 / trials - a * a + b2 / trials - b * b) / trials);
  EXPECT_NEAR(a, b, 4 * se);
  EXPECT_NEAR(a, 9.0, 0.05 * 9.0);
}

TEST(Ginibre, RotationInvariant) {
  GinibreSpec spec;
  spec.k = 64;
  spec.radius = 5.0;
  std::vector<double> args;
  for (int t = 0; t < 300; ++t) {
    SeededRng rng(8, static_cast<std::uint64_t>(t));
    for (const auto& z : sample_ginibre(spec, rng).points) args.push_back(std::arg(z));
  }
  PointConfiguration all;
  for (double a : args) all.points.push_back(std::polar(1.0, a));
  EXPECT_GT(kuiper_uniform(unit_arguments(all.points)).p_value, 1e-3);
}

TEST(Ginibre, Deterministic) {
  GinibreSpec spec;
  spec.k = 50;
  SeededRng a(9, 3), b(9, 3);
  const auto x = sample_ginibre(spec, a);
  const auto y = sample_ginibre(spec, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x.points[i], y.points[i]);
  EXPECT_EQ(total_variation(x, y), 0u);
}

TEST(PowerSeries, MeanCounts) {
  PowerSeriesSpec spec;
  spec.rho = 0.7;
  spec.degree = 200;
  const std::vector<double> radii{0.3, 0.5, 0.7};
  std::vector<double> args;
  const auto got = mean_counts(spec, radii, 10000, 10, &args);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double expected = power_series_mean_count(radii[i]);
    // rho = 0.3 expects only ~0.1 points, so 1e4 trials give a 3% standard error there
    const double tol = radii[i] < 0.4 ? 0.1 : 0.05;
    EXPECT_NEAR(got[i], expected, tol * expected) << radii[i];
  }
  std::vector<double> unit;
  for (double a : args) unit.push_back(a / (2 * std::numbers::pi) + 0.5);
  EXPECT_GT(kuiper_uniform(unit).p_value, 1e-3);
}

TEST(PowerSeries, MeanCountFormula) {
  EXPECT_NEAR(power_series_mean_count(0.5), 1.0 / 3, 1e-15);
  EXPECT_NEAR(power_series_mean_count(0.7), 0.49 / 0.51, 1e-15);
}

TEST(PowerSeries, DegreeZeroIsEmpty) {
  PowerSeriesSpec spec;
  spec.degree = 0;
  SeededRng rng(11);
  EXPECT_TRUE(sample_power_series_zeros(spec, rng).empty());
}

TEST(PowerSeries, SpecValidation) {
  PowerSeriesSpec spec;
  spec.rho = 0.96;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.rho = 0.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.rho = 0.5;
  spec.degree = -1;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.degree = 3;  // below 2 / (1 - rho) = 4
  spec.validate();
  EXPECT_EQ(spec.warnings().size(), 1u);
}

TEST(PowerSeries, TruncationBound) {
  PowerSeriesSpec spec;
  spec.rho = 0.5;
  spec.degree = 100;
  const double b100 = truncation_error_bound(spec);
  spec.degree = 200;
  const double b200 = truncation_error_bound(spec);
  EXPECT_LT(b200, b100);
  EXPECT_LT(b200, 1e-12);
  spec.rho = 1e-6;
  spec.degree = 1;
  EXPECT_LT(truncation_error_bound(spec), 1e-5);
  spec.rho = 1e-3;
  EXPECT_LT(truncation_error_bound(spec), truncation_error_bound(PowerSeriesSpec{0.1, 1, 1e-6}));
  for (double rho : {0.1, 0.5, 0.8, 0.9, 0.95}) {
    const int d = default_truncation_degree(rho);
    EXPECT_GE(d, 200);
    EXPECT_GE(d, static_cast<int>(std::ceil(12 / (1 - rho))));
    EXPECT_LT(truncation_error_bound(PowerSeriesSpec{rho, d, 1e-6}), 1e-9) << rho;
  }
}

TEST(PowerSeries, Deterministic) {
  PowerSeriesSpec spec;
  spec.rho = 0.8;
  SeededRng a(12, 5), b(12, 5);
  const auto x = sample_power_series_zeros(spec, a);
  const auto y = sample_power_series_zeros(spec, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x.points[i], y.points[i]);
}

// Aberth iteration is checked against the companion-matrix eigenvalues.
TEST(Roots, AberthMatchesCompanion) {
  SeededRng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Complex> c(60);
    for (auto& x : c) x = rng.complex_normal();
    auto a = aberth_roots(c);
    auto b = companion_roots(c);
    ASSERT_EQ(a.size(), 59u);
    ASSERT_EQ(b.size(), 59u);
    for (const auto& z : a) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : b) best = std::min(best, std::abs(z - w));
      EXPECT_LT(best, 1e-6 * (1 + std::abs(z)));
    }
  }
}

TEST(Roots, KnownPolynomial) {
  // (z - 1)(z + 2)(z - 0.5i) = z^3 + (1 - 0.5i) z^2 + (-2 - 0.5i) z + i
  const std::vector<Complex> c{Complex(0, 1), Complex(-2, -0.5), Complex(1, -0.5), 1.0};
  for (const auto& roots : {aberth_roots(c), companion_roots(c)}) {
    ASSERT_EQ(roots.size(), 3u);
    for (Complex expected : {Complex(1, 0), Complex(-2, 0), Complex(0, 0.5)}) {
      double best = 1e9;
      for (const auto& z : roots) best = std::min(best, std::abs(z - expected));
      EXPECT_LT(best, 1e-10);
    }
  }
}

TEST(PointConfiguration, TotalVariationCountsSymmetricDifference) {
  PointConfiguration a{{Complex(0, 0), Complex(1, 0), Complex(2, 0)}};
  PointConfiguration b{{Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)}};
  EXPECT_EQ(total_variation(a, b), 3u);
  EXPECT_EQ(total_variation(a, a), 0u);
  const auto back = points_from_json(points_to_json(b));
  EXPECT_EQ(total_variation(back, b), 0u);
}

}  // namespace
