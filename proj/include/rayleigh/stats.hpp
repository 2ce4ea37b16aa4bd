#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "rayleigh/error.hpp"

namespace rayleigh {

struct Interval {
  double lo;
  double hi;
};

/// Exact two-sided Clopper-Pearson interval for a binomial proportion.
inline Interval clopper_pearson(long successes, long trials, double confidence = 0.99) {
  if (trials <= 0 || successes < 0 || successes > trials) throw InvalidArgument("invalid binomial counts");
  const double alpha = 1.0 - confidence;
  const auto x = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval out{0.0, 1.0};
  if (successes > 0) out.lo = boost::math::quantile(boost::math::beta_distribution<>(x, n - x + 1.0), alpha / 2.0);
  if (successes < trials) out.hi = boost::math::quantile(boost::math::beta_distribution<>(x + 1.0, n - x), 1.0 - alpha / 2.0);
  return out;
}

struct GoodnessOfFit {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  int cells = 0;  // after pooling
};

/// Pearson chi-square test of observed counts against cell probabilities.
///
/// Cells are taken in order of decreasing expected count and merged until
/// each pooled cell expects at least `min_expected`. Any observation in a
/// zero-probability cell gives p = 0.
inline GoodnessOfFit chi_square_gof(std::span<const long> observed, std::span<const double> probabilities,
                                    double min_expected = 5.0) {
  if (observed.size() != probabilities.size()) throw DimensionMismatch("observed and expected cell counts differ");
  long total = 0;
  for (long o : observed) total += o;
  if (total <= 0) throw InvalidArgument("no observations");
  double prob_total = 0.0;
  for (double p : probabilities) prob_total += p;
  std::vector<std::pair<double, long>> cells;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probabilities[i] / prob_total * static_cast<double>(total);
    if (expected <= 0.0) {
      if (observed[i] > 0) return {std::numeric_limits<double>::infinity(), 0, 0.0, 0};
      continue;
    }
    cells.emplace_back(expected, observed[i]);
  }
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, long>> pooled;
  for (const auto& c : cells) {
    if (!pooled.empty() && pooled.back().first < min_expected) {
      pooled.back().first += c.first;
      pooled.back().second += c.second;
    } else {
      pooled.push_back(c);
    }
  }
  while (pooled.size() > 1 && pooled.back().first < min_expected) {
    auto last = pooled.back();
    pooled.pop_back();
    pooled.back().first += last.first;
    pooled.back().second += last.second;
  }
  GoodnessOfFit out;
  out.cells = static_cast<int>(pooled.size());
  for (const auto& [e, o] : pooled) out.statistic += (static_cast<double>(o) - e) * (static_cast<double>(o) - e) / e;
  out.degrees_of_freedom = out.cells - 1;
  if (out.degrees_of_freedom < 1) return out;
  out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.degrees_of_freedom), out.statistic));
  return out;
}

struct KuiperResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Kuiper's test of uniformity on [0,1) (rotation-invariant for circular data).
inline KuiperResult kuiper_uniform(std::vector<double> samples) {
  const auto n = samples.size();
  if (n == 0) throw InvalidArgument("Kuiper test needs samples");
  std::sort(samples.begin(), samples.end());
  double d_plus = 0.0, d_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = samples[i];
    d_plus = std::max(d_plus, static_cast<double>(i + 1) / static_cast<double>(n) - u);
    d_minus = std::max(d_minus, u - static_cast<double>(i) / static_cast<double>(n));
  }
  KuiperResult out;
  out.statistic = d_plus + d_minus;
  const double root = std::sqrt(static_cast<double>(n));
  const double lambda = (root + 0.155 + 0.24 / root) * out.statistic;
  if (lambda < 0.4) return out;  // the series is 1 to double precision here
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double t = 2.0 * j * j * lambda * lambda;
    const double term = 2.0 * (2.0 * t - 1.0) * std::exp(-t);
    sum += term;
    if (std::abs(term) < 1e-16 * std::max(sum, 1e-300)) break;
  }
  out.p_value = std::clamp(sum, 0.0, 1.0);
  return out;
}

/// Angles of complex points mapped to [0,1).
template <class Points>
std::vector<double> unit_arguments(const Points& points) {
  std::vector<double> out;
  for (const auto& z : points) {
    double a = std::arg(z) / (2.0 * std::numbers::pi);
    if (a < 0.0) a += 1.0;
    if (a >= 1.0) a = 0.0;
    out.push_back(a);
  }
  return out;
}

/// Total variation between an empirical histogram and cell probabilities.
inline double empirical_total_variation(std::span<const long> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) throw DimensionMismatch("histogram sizes differ");
  long total = 0;
  for (long o : observed) total += o;
  double d = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i)
    d += std::abs(static_cast<double>(observed[i]) / static_cast<double>(total) - probabilities[i]);
  return 0.5 * d;
}

}  // namespace rayleigh
