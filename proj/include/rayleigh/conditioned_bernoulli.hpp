#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "rayleigh/configuration.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/polynomial.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr double kLogSpaceRatio = 1e6;

/// Independent coordinates with odds lambda_j, conditioned on exactly k ones:
/// P(x) ∝ prod_j lambda_j^{x_j} on rank-k configurations.
///
/// Sampled coordinate by coordinate; with s ones placed so far, coordinate j
/// is included with probability lambda_j E_{k-s-1}(lambda_{j+1..}) / E_{k-s}(lambda_{j..}).
class ConditionedBernoulliSampler {
 public:
  ConditionedBernoulliSampler(std::vector<double> lambda, int k) : lambda_(std::move(lambda)), k_(k) {
    const int n = static_cast<int>(lambda_.size());
    if (n < 1) throw InvalidArgument("conditioned Bernoulli needs at least one coordinate");
    if (k < 0 || k > n) throw InvalidArgument("k=" + std::to_string(k) + " outside 0.." + std::to_string(n));
    for (double w : lambda_)
      if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and positive");
    const auto [lo, hi] = std::minmax_element(lambda_.begin(), lambda_.end());
    log_space_ = *hi / *lo > kLogSpaceRatio;
    if (!log_space_) {
      table_ = suffix_elementary_symmetric(lambda_, k, false);
      for (const auto& row : table_)
        for (double v : row)
          if (!std::isfinite(v)) log_space_ = true;
    }
    if (log_space_) table_ = suffix_elementary_symmetric(lambda_, k, true);
  }

  int n() const noexcept { return static_cast<int>(lambda_.size()); }
  int k() const noexcept { return k_; }
  bool uses_log_space() const noexcept { return log_space_; }

  /// Probability that coordinate j is included given `need` ones still to place.
  double inclusion_probability(int j, int need) const {
    const auto uj = static_cast<std::size_t>(j);
    const auto un = static_cast<std::size_t>(need);
    if (need == 0) return 0.0;
    if (n() - j == need) return 1.0;
    if (log_space_) return std::exp(std::log(lambda_[uj]) + table_[uj + 1][un - 1] - table_[uj][un]);
    return lambda_[uj] * table_[uj + 1][un - 1] / table_[uj][un];
  }

  Configuration operator()(SeededRng& rng) const {
    Configuration x(n());
    int need = k_;
    for (int j = 0; j < n() && need > 0; ++j) {
      if (rng.uniform() < inclusion_probability(j, need)) {
        x.set(j, true);
        --need;
      }
    }
    return x;
  }

 private:
  std::vector<double> lambda_;
  int k_;
  bool log_space_ = false;
  std::vector<std::vector<double>> table_;
};

inline Configuration sample_conditioned_bernoulli(std::span<const double> lambda, int k, SeededRng& rng) {
  return ConditionedBernoulliSampler(std::vector<double>(lambda.begin(), lambda.end()), k)(rng);
}

/// Closed-form law, by direct enumeration of the rank-k configurations.
inline BooleanMeasure conditioned_bernoulli_law(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (n < 1 || n > kDefaultMaxCoordinates) throw CapExceeded("conditioned Bernoulli law", n, kDefaultMaxCoordinates);
  if (k < 0 || k > n) throw InvalidArgument("k outside 0..n");
  std::vector<double> log_w(std::size_t{1} << n, -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < log_w.size(); ++mask) {
    if (std::popcount(mask) != k) continue;
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1U) s += std::log(lambda[static_cast<std::size_t>(j)]);
    log_w[mask] = s;
    top = std::max(top, s);
  }
  std::vector<double> w(log_w.size(), 0.0);
  for (std::size_t mask = 0; mask < w.size(); ++mask)
    if (std::isfinite(log_w[mask])) w[mask] = std::exp(log_w[mask] - top);
  return BooleanMeasure::from_weights(n, std::move(w));
}

}  // namespace rayleigh
