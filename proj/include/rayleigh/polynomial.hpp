#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "rayleigh/error.hpp"

namespace rayleigh {

using Complex = std::complex<double>;

/// Law of a sum of independent Bernoulli(p_i): entry k is P(sum = k).
inline std::vector<double> poisson_binomial(std::span<const double> p) {
  std::vector<double> dist{1.0};
  dist.reserve(p.size() + 1);
  for (double q : p) {
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("Bernoulli parameter outside [0,1]");
    dist.push_back(0.0);
    for (std::size_t k = dist.size() - 1; k > 0; --k) dist[k] = dist[k] * (1.0 - q) + dist[k - 1] * q;
    dist[0] *= 1.0 - q;
  }
  return dist;
}

/// Elementary symmetric polynomials of every suffix of the weights.
///
/// table[j][m] = E_m(w_j, ..., w_{n-1}) for m = 0..max_order, j = 0..n.
/// With `log_space` the entries are natural logarithms (-inf for zero),
/// combined by log-sum-exp so large weight ratios cannot overflow.
inline std::vector<std::vector<double>> suffix_elementary_symmetric(std::span<const double> w, int max_order,
                                                                    bool log_space) {
  const std::size_t n = w.size();
  const auto orders = static_cast<std::size_t>(max_order) + 1;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(orders, log_space ? kNegInf : 0.0));
  table[n][0] = log_space ? 0.0 : 1.0;
  for (std::size_t j = n; j-- > 0;) {
    table[j][0] = log_space ? 0.0 : 1.0;
    for (std::size_t m = 1; m < orders; ++m) {
      if (log_space) {
        const double skip = table[j + 1][m];
        const double take = std::log(w[j]) + table[j + 1][m - 1];
        const double hi = std::max(skip, take);
        table[j][m] = hi == kNegInf ? kNegInf : hi + std::log1p(std::exp(std::min(skip, take) - hi));
      } else {
        table[j][m] = table[j + 1][m] + w[j] * table[j + 1][m - 1];
      }
    }
  }
  return table;
}

/// E_0..E_n of the weights.
inline std::vector<double> elementary_symmetric(std::span<const double> w) {
  auto table = suffix_elementary_symmetric(w, static_cast<int>(w.size()), false);
  return table.front();
}

/// Evaluates sum_k c_k z^k by Horner's rule.
inline Complex polyval(std::span<const Complex> c, Complex z) {
  Complex acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

/// p(z) / p'(z) for sum_k c_k z^k.
inline Complex newton_ratio(std::span<const Complex> c, Complex z) {
  Complex p = c.back(), dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return p / dp;
}

/// Roots of sum_k c_k z^k (c.back() != 0) as eigenvalues of the complex
/// companion matrix, via LAPACK's Hessenberg QR.
inline std::vector<Complex> companion_roots(std::span<const Complex> c) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree < 1) return {};
  if (c.back() == Complex(0.0)) throw InvalidArgument("leading coefficient is zero");
  const auto d = static_cast<std::size_t>(degree);
  std::vector<Complex> a(d * d, 0.0), w(d);
  for (std::size_t i = 1; i < d; ++i) a[(i - 1) * d + i] = 1.0;
  for (std::size_t i = 0; i < d; ++i) a[(d - 1) * d + i] = -c[i] / c.back();
  const int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', degree, 1, degree, a.data(), degree, w.data(),
                                  nullptr, 1);
  if (info != 0) throw NumericalError("companion eigenvalue iteration failed (info " + std::to_string(info) + ")");
  return w;
}

/// Roots of a real polynomial sum_k c_k z^k from the real companion matrix.
inline std::vector<Complex> real_companion_roots(std::span<const double> c) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree < 1) return {};
  if (c.back() == 0.0) throw InvalidArgument("leading coefficient is zero");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("real companion eigensolver failed");
  std::vector<Complex> roots(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

/// Simultaneous Aberth-Ehrlich iteration for all roots of sum_k c_k z^k.
///
/// Returns an empty vector when the iteration does not converge within
/// `max_sweeps`, so callers can fall back to companion_roots().
inline std::vector<Complex> aberth_roots(std::span<const Complex> c, int max_sweeps = 200) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree < 1) return {};
  const auto d = static_cast<std::size_t>(degree);
  // Initial radius from the geometric mean of the root moduli.
  const double radius = std::pow(std::abs(c.front()) / std::abs(c.back()), 1.0 / degree);
  std::vector<Complex> z(d);
  for (std::size_t i = 0; i < d; ++i)
    z[i] = std::polar(radius > 0.0 && std::isfinite(radius) ? radius : 1.0,
                      2.0 * std::numbers::pi * static_cast<double>(i) / degree + 0.4);
  std::vector<char> converged(d, 0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool active = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (converged[i]) continue;
      const Complex ratio = newton_ratio(c, z[i]);
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return {};
      z[i] -= step;
      if (std::abs(step) <= 1e-14 * std::abs(z[i]) + 1e-300) converged[i] = 1;
      else active = true;
    }
    if (!active) return z;
  }
  return {};
}

}  // namespace rayleigh
