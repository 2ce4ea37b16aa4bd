#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "rayleigh/error.hpp"
#include "rayleigh/polynomial.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

/// Finite multiset of planar points.
struct PointConfiguration {
  std::vector<Complex> points;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;
};

/// Total variation between counting measures: the size of the multiset
/// symmetric difference (points compared exactly).
inline std::size_t total_variation(const PointConfiguration& a, const PointConfiguration& b) {
  auto key = [](const Complex& z) { return std::pair{z.real(), z.imag()}; };
  std::map<std::pair<double, double>, long> balance;
  for (const auto& z : a.points) ++balance[key(z)];
  for (const auto& z : b.points) --balance[key(z)];
  std::size_t d = 0;
  for (const auto& [_, c] : balance) d += static_cast<std::size_t>(std::abs(c));
  return d;
}

enum class GinibreModel {
  hessenberg,  // upper Hessenberg matrix with the same eigenvalue law
  dense,       // full k x k matrix of iid entries
};

/// Eigenvalues of a k x k matrix of standard complex Gaussians, kept within radius r.
struct GinibreSpec {
  int k = 1;
  double radius = std::numeric_limits<double>::infinity();
  GinibreModel model = GinibreModel::hessenberg;

  void validate() const {
    if (k < 1) throw InvalidArgument("Ginibre matrix size must be at least 1");
    if (!(radius >= 0.0)) throw InvalidArgument("observation radius must be nonnegative");
  }

  /// Advisory notes; the finite-k approximation degrades outside the bulk.
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    const double bulk = std::sqrt(static_cast<double>(k));
    if (radius > bulk && std::isfinite(radius))
      out.push_back("observation radius exceeds the bulk radius sqrt(k); the disk reaches the spectral edge");
    else if (radius > bulk / 2 && std::isfinite(radius))
      out.push_back("observation radius exceeds sqrt(k)/2; edge effects may bias counts");
    return out;
  }
};

namespace detail {

inline void keep_within(std::vector<Complex>& values, double radius, PointConfiguration& out) {
  for (const auto& z : values)
    if (std::abs(z) <= radius) out.points.push_back(z);
}

}  // namespace detail

/// One draw of the finite Ginibre ensemble restricted to |z| <= r.
///
/// The Hessenberg model draws iid standard complex Gaussians on and above
/// the diagonal and sub-diagonal moduli h_{j+1,j} = sqrt(Gamma(k-1-j, 1));
/// Householder reduction of a full Ginibre matrix produces exactly this
/// law, so the eigenvalues agree in distribution at a fraction of the cost.
inline PointConfiguration sample_ginibre(const GinibreSpec& spec, SeededRng& rng) {
  spec.validate();
  const int k = spec.k;
  const auto uk = static_cast<std::size_t>(k);
  std::vector<Complex> a(uk * uk, 0.0), w(uk);
  int info = 0;
  if (spec.model == GinibreModel::hessenberg) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i <= j; ++i) a[static_cast<std::size_t>(j) * uk + static_cast<std::size_t>(i)] = rng.complex_normal();
      if (j + 1 < k)
        a[static_cast<std::size_t>(j) * uk + static_cast<std::size_t>(j + 1)] = std::sqrt(rng.gamma_integer(k - 1 - j));
    }
    info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', k, 1, k, a.data(), k, w.data(), nullptr, 1);
  } else {
    for (auto& entry : a) entry = rng.complex_normal();
    info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', k, a.data(), k, w.data(), nullptr, 1, nullptr, 1);
  }
  if (info != 0) throw NumericalError("Ginibre eigenvalue computation failed (info " + std::to_string(info) + ")");
  PointConfiguration out;
  detail::keep_within(w, spec.radius, out);
  return out;
}

/// Zeros in |z| <= rho of the truncation sum_{n<=D} X_n z^n, X_n iid standard complex Gaussians.
struct PowerSeriesSpec {
  double rho = 0.5;
  int degree = 200;
  double root_tolerance = 1e-6;

  void validate() const {
    if (!(rho > 0.0 && rho <= 0.95)) throw InvalidArgument("disk radius must lie in (0, 0.95]");
    if (degree < 0) throw InvalidArgument("truncation degree must be nonnegative");
    if (!(root_tolerance > 0.0) || !std::isfinite(root_tolerance)) throw InvalidArgument("root tolerance must be positive");
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    if (degree < 2.0 / (1.0 - rho))
      out.push_back("truncation degree below 2/(1-rho); truncation bias may be visible");
    return out;
  }
};

/// log of truncation_error_bound(); finite for every valid spec.
inline double log_truncation_error_bound(const PowerSeriesSpec& spec) {
  spec.validate();
  return std::log(std::sqrt(std::numbers::pi) / 2.0) + (spec.degree + 1.0) * std::log(spec.rho) -
         std::log1p(-spec.rho) - std::log(spec.root_tolerance);
}

/// Markov bound on P(sup_{|z|<=rho} |sum_{n>D} X_n z^n| >= tol).
///
/// The supremum is at most sum_{n>D} |X_n| rho^n, whose mean is
/// (sqrt(pi)/2) rho^{D+1} / (1 - rho).
inline double truncation_error_bound(const PowerSeriesSpec& spec) {
  return std::exp(log_truncation_error_bound(spec));
}

/// max(200, ceil(12/(1-rho)), smallest D with truncation bound below 1e-9).
inline int default_truncation_degree(double rho, double root_tolerance = 1e-6) {
  PowerSeriesSpec s{rho, 0, root_tolerance};
  s.validate();
  const double target = std::log(1e-9);
  const double base = log_truncation_error_bound(s) - std::log(rho);  // value at D+1 = 0
  const int needed = static_cast<int>(std::ceil((target - base) / std::log(rho))) - 1;
  int degree = std::max({200, static_cast<int>(std::ceil(12.0 / (1.0 - rho))), needed});
  s.degree = degree;
  while (log_truncation_error_bound(s) >= target) s.degree = ++degree;
  return degree;
}

/// One draw of the zero set within |z| <= rho.
///
/// Leading coefficients below root_tolerance are dropped (degree reduction).
/// Roots come from Aberth iteration, falling back to companion-matrix
/// eigenvalues; each root receives one Newton step before classification.
inline PointConfiguration sample_power_series_zeros(const PowerSeriesSpec& spec, SeededRng& rng) {
  spec.validate();
  std::vector<Complex> c(static_cast<std::size_t>(spec.degree) + 1);
  for (auto& x : c) x = rng.complex_normal();
  if (std::all_of(c.begin(), c.end(), [](const Complex& x) { return x == Complex(0.0); }))
    throw NumericalError("all power-series coefficients are zero");
  while (c.size() > 1 && std::abs(c.back()) < spec.root_tolerance) c.pop_back();
  PointConfiguration out;
  if (c.size() < 2) return out;
  auto roots = aberth_roots(c);
  if (roots.empty()) roots = companion_roots(c);
  for (auto& z : roots) {
    const Complex step = newton_ratio(c, z);
    if (std::isfinite(step.real()) && std::isfinite(step.imag())) z -= step;
  }
  detail::keep_within(roots, spec.rho, out);
  return out;
}

/// Mean number of zeros in |z| <= rho for the untruncated series.
inline double power_series_mean_count(double rho) { return rho * rho / (1.0 - rho * rho); }

}  // namespace rayleigh
