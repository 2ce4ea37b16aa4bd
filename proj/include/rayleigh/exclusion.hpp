#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "rayleigh/configuration.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr int kExclusionExactCap = 10;

/// Symmetric exclusion with optional births and deaths, run up to a fixed time.
///
/// An occupied/empty pair (i, j) swaps at rate swap_rates[i][j]; an empty
/// site i fills at rate birth_rates[i]; an occupied site i empties at rate
/// death_rates[i]. Empty birth/death vectors mean all zero.
struct ExclusionSpec {
  int n = 0;
  std::vector<std::vector<double>> swap_rates;
  std::vector<double> birth_rates;
  std::vector<double> death_rates;
  Configuration initial;
  double horizon = 0.0;

  void validate() const {
    if (n < 1) throw InvalidArgument("exclusion needs at least one site");
    if (swap_rates.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("swap_rates must be n x n");
    for (std::size_t i = 0; i < swap_rates.size(); ++i) {
      if (swap_rates[i].size() != static_cast<std::size_t>(n)) throw DimensionMismatch("swap_rates must be n x n");
      for (std::size_t j = 0; j < swap_rates.size(); ++j) {
        const double r = swap_rates[i][j];
        if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("swap rates must be finite and nonnegative");
        if (i != j && std::abs(r - swap_rates[j][i]) > 1e-12 * std::max(1.0, std::abs(r)))
          throw InvalidArgument("swap rates must be symmetric; r(" + std::to_string(i) + "," + std::to_string(j) +
                                ") != r(" + std::to_string(j) + "," + std::to_string(i) + ")");
      }
    }
    auto check_rates = [&](const std::vector<double>& v, const char* what) {
      if (!v.empty() && v.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch(std::string(what) + " must have n entries");
      for (double r : v)
        if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument(std::string(what) + " must be finite and nonnegative");
    };
    check_rates(birth_rates, "birth_rates");
    check_rates(death_rates, "death_rates");
    if (initial.size() != n) throw DimensionMismatch("initial configuration length differs from n");
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be finite and nonnegative");
  }

  double birth(int i) const { return birth_rates.empty() ? 0.0 : birth_rates[static_cast<std::size_t>(i)]; }
  double death(int i) const { return death_rates.empty() ? 0.0 : death_rates[static_cast<std::size_t>(i)]; }
  double swap(int i, int j) const { return swap_rates[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  /// Nearest-neighbour swaps at a common rate on the cycle of n sites.
  static ExclusionSpec cycle(int n, double rate, Configuration initial, double horizon) {
    ExclusionSpec s;
    s.n = n;
    s.swap_rates.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      if (i == j) continue;
      s.swap_rates[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rate;
      s.swap_rates[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = rate;
    }
    s.initial = std::move(initial);
    s.horizon = horizon;
    return s;
  }
};

/// Exact event-driven simulation; returns the state at the horizon.
inline Configuration simulate_exclusion(const ExclusionSpec& spec, SeededRng& rng) {
  spec.validate();
  Configuration x = spec.initial;
  const int n = spec.n;
  struct Transition {
    int i, j;  // j < 0 flips site i
    double rate;
  };
  std::vector<Transition> active;
  double t = 0.0;
  for (;;) {
    active.clear();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double flip = x[i] ? spec.death(i) : spec.birth(i);
      if (flip > 0.0) {
        active.push_back({i, -1, flip});
        total += flip;
      }
      for (int j = i + 1; j < n; ++j) {
        const double r = spec.swap(i, j);
        if (r > 0.0 && x[i] != x[j]) {
          active.push_back({i, j, r});
          total += r;
        }
      }
    }
    if (!(total > 0.0)) break;
    t += rng.exponential(total);
    if (t > spec.horizon) break;
    double target = rng.uniform() * total;
    std::size_t pick = 0;
    for (; pick + 1 < active.size(); ++pick) {
      target -= active[pick].rate;
      if (target < 0.0) break;
    }
    const Transition& tr = active[pick];
    if (tr.j < 0) {
      x.flip(tr.i);
    } else {
      x.flip(tr.i);
      x.flip(tr.j);
    }
  }
  return x;
}

/// Generator matrix Q on all 2^n states (row = from, column = to).
inline Eigen::MatrixXd exclusion_generator(const ExclusionSpec& spec) {
  spec.validate();
  if (spec.n > kExclusionExactCap) throw CapExceeded("exclusion generator", spec.n, kExclusionExactCap);
  const int n = spec.n;
  const auto states = Eigen::Index{1} << n;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(states, states);
  for (Eigen::Index s = 0; s < states; ++s) {
    for (int i = 0; i < n; ++i) {
      const bool occupied = s >> i & 1;
      const double flip = occupied ? spec.death(i) : spec.birth(i);
      if (flip > 0.0) q(s, s ^ (Eigen::Index{1} << i)) += flip;
      for (int j = i + 1; j < n; ++j) {
        const double r = spec.swap(i, j);
        if (r > 0.0 && occupied != static_cast<bool>(s >> j & 1))
          q(s, s ^ (Eigen::Index{1} << i) ^ (Eigen::Index{1} << j)) += r;
      }
    }
    q(s, s) = -q.row(s).sum();
  }
  return q;
}

/// Exact law at the horizon: the initial row of exp(t Q).
inline BooleanMeasure exclusion_exact_law(const ExclusionSpec& spec) {
  const Eigen::MatrixXd q = exclusion_generator(spec);
  const Eigen::MatrixXd transition = (q * spec.horizon).exp();
  const auto start = static_cast<Eigen::Index>(spec.initial.mask());
  std::vector<double> row(static_cast<std::size_t>(q.rows()));
  double total = 0.0;
  for (Eigen::Index s = 0; s < q.rows(); ++s) {
    double p = transition(start, s);
    if (p < -1e-9) throw NumericalError("matrix exponential produced a negative probability");
    p = std::max(p, 0.0);
    row[static_cast<std::size_t>(s)] = p;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NumericalError("matrix exponential row does not sum to one");
  return BooleanMeasure(spec.n, std::move(row));
}

}  // namespace rayleigh
