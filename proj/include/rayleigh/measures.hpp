#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rayleigh/configuration.hpp"
#include "rayleigh/error.hpp"

namespace rayleigh {

inline constexpr int kDefaultMaxCoordinates = 20;
inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-6;

/// An explicit probability measure on the Boolean lattice {0,1}^n.
///
/// Masses are stored densely, indexed by the configuration mask (bit i is
/// coordinate i), which caps n at a small configurable size. Instances are
/// immutable after construction. The constructor accepts masses whose total
/// is within 1e-6 of one and renormalizes them; anything further off, or any
/// negative mass, is rejected.
class BooleanMeasure {
 public:
  using Mask = std::uint32_t;

  BooleanMeasure(int n, std::vector<double> masses, int max_coordinates = kDefaultMaxCoordinates)
      : n_(n), mass_(std::move(masses)) {
    if (n < 1) throw InvalidArgument("a Boolean measure needs at least one coordinate");
    if (n > max_coordinates || n > 30)
      throw CapExceeded("dense Boolean measure", n, std::min(max_coordinates, 30));
    if (mass_.size() != (std::size_t{1} << n))
      throw DimensionMismatch("mass vector has " + std::to_string(mass_.size()) +
                              " entries, expected 2^" + std::to_string(n));
    double total = 0.0;
    for (double m : mass_) {
      if (!(m >= 0.0) || !std::isfinite(m))
        throw InvalidArgument("masses must be finite and nonnegative");
      total += m;
    }
    if (std::abs(total - 1.0) > kRenormalizeTolerance)
      throw InvalidArgument("masses sum to " + std::to_string(total) + ", not 1");
    if (std::abs(total - 1.0) > 0.0)
      for (double& m : mass_) m /= total;
  }

  static BooleanMeasure from_atoms(int n, const std::vector<std::pair<Configuration, double>>& atoms,
                                   int max_coordinates = kDefaultMaxCoordinates) {
    if (n < 1 || n > std::min(max_coordinates, 30))
      throw CapExceeded("dense Boolean measure", n, std::min(max_coordinates, 30));
    std::vector<double> masses(std::size_t{1} << n, 0.0);
    for (const auto& [x, w] : atoms) {
      if (x.size() != n) throw DimensionMismatch("atom length differs from n");
      masses[static_cast<std::size_t>(x.mask())] += w;
    }
    return BooleanMeasure(n, std::move(masses), max_coordinates);
  }

  /// Builds from unnormalized nonnegative weights (normalizes exactly).
  static BooleanMeasure from_weights(int n, std::vector<double> weights,
                                     int max_coordinates = kDefaultMaxCoordinates) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw InvalidArgument("weights have zero total mass");
    for (double& w : weights) w /= total;
    return BooleanMeasure(n, std::move(weights), max_coordinates);
  }

  static BooleanMeasure point_mass(const Configuration& x) {
    std::vector<double> masses(std::size_t{1} << x.size(), 0.0);
    masses[static_cast<std::size_t>(x.mask())] = 1.0;
    return BooleanMeasure(x.size(), std::move(masses));
  }

  /// Independent Bernoulli(p_i) coordinates.
  static BooleanMeasure product(std::span<const double> p) {
    const int n = static_cast<int>(p.size());
    if (n < 1 || n > kDefaultMaxCoordinates)
      throw CapExceeded("dense Boolean measure", n, kDefaultMaxCoordinates);
    for (double q : p)
      if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("Bernoulli parameter outside [0,1]");
    std::vector<double> masses(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < masses.size(); ++mask) {
      double w = 1.0;
      for (int i = 0; i < n; ++i) w *= (mask >> i & 1U) ? p[static_cast<std::size_t>(i)] : 1.0 - p[static_cast<std::size_t>(i)];
      masses[mask] = w;
    }
    return BooleanMeasure(n, std::move(masses));
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return mass_.size(); }
  double mass(Mask mask) const { return mass_.at(mask); }
  double mass(const Configuration& x) const {
    if (x.size() != n_) throw DimensionMismatch("configuration length differs from n");
    return mass_[static_cast<std::size_t>(x.mask())];
  }
  std::span<const double> masses() const noexcept { return mass_; }

  Configuration configuration(Mask mask) const { return Configuration::from_mask(n_, mask); }

  /// Calls fn(mask, mass) for every atom with positive mass.
  template <class Fn>
  void for_each_atom(Fn&& fn) const {
    for (std::size_t mask = 0; mask < mass_.size(); ++mask)
      if (mass_[mask] > 0.0) fn(static_cast<Mask>(mask), mass_[mask]);
  }

  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count_if(mass_.begin(), mass_.end(), [](double m) { return m > 0.0; }));
  }

  /// True when all mass sits on a single rank.
  bool is_homogeneous() const { return homogeneous_rank() >= 0; }

  /// The common rank of the support, or -1 when not homogeneous.
  int homogeneous_rank() const {
    int rank = -1;
    for (std::size_t mask = 0; mask < mass_.size(); ++mask) {
      if (mass_[mask] <= 0.0) continue;
      const int r = std::popcount(mask);
      if (rank == -1) rank = r;
      else if (rank != r) return -1;
    }
    return rank;
  }

  friend bool operator==(const BooleanMeasure&, const BooleanMeasure&) = default;

 private:
  int n_;
  std::vector<double> mass_;
};

/// Sum over the support of P(w) prod_j z_j^{w_j}.
inline std::complex<double> generating_polynomial_eval(const BooleanMeasure& m,
                                                       std::span<const std::complex<double>> z) {
  if (static_cast<int>(z.size()) != m.n())
    throw DimensionMismatch("evaluation point has " + std::to_string(z.size()) + " coordinates, measure has " +
                            std::to_string(m.n()));
  std::complex<double> total = 0.0;
  m.for_each_atom([&](BooleanMeasure::Mask mask, double p) {
    std::complex<double> term = p;
    for (int j = 0; j < m.n(); ++j)
      if (mask >> j & 1U) term *= z[static_cast<std::size_t>(j)];
    total += term;
  });
  return total;
}

inline std::complex<double> generating_polynomial_eval(const BooleanMeasure& m,
                                                       std::initializer_list<std::complex<double>> z) {
  return generating_polynomial_eval(m, std::span<const std::complex<double>>(z.begin(), z.size()));
}

/// Conditions on X_j = b_j for j in the assignment; the result lives on the
/// remaining coordinates, re-indexed in increasing original order.
inline BooleanMeasure condition(const BooleanMeasure& m, const std::map<int, bool>& assignments) {
  const int n = m.n();
  BooleanMeasure::Mask fixed = 0, values = 0;
  for (const auto& [coord, bit] : assignments) {
    if (coord < 0 || coord >= n) throw InvalidArgument("conditioning coordinate out of range");
    fixed |= BooleanMeasure::Mask{1} << coord;
    if (bit) values |= BooleanMeasure::Mask{1} << coord;
  }
  const int remaining = n - std::popcount(fixed);
  if (remaining < 1) throw InvalidArgument("conditioning leaves no free coordinates");
  std::vector<int> free_coords;
  for (int j = 0; j < n; ++j)
    if (!(fixed >> j & 1U)) free_coords.push_back(j);

  std::vector<double> out(std::size_t{1} << remaining, 0.0);
  double total = 0.0;
  m.for_each_atom([&](BooleanMeasure::Mask mask, double p) {
    if ((mask & fixed) != values) return;
    BooleanMeasure::Mask packed = 0;
    for (int i = 0; i < remaining; ++i)
      if (mask >> free_coords[static_cast<std::size_t>(i)] & 1U) packed |= BooleanMeasure::Mask{1} << i;
    out[packed] += p;
    total += p;
  });
  if (!(total > 0.0)) throw NullConditioning("conditioning event has zero mass");
  for (double& w : out) w /= total;
  return BooleanMeasure(remaining, std::move(out), 30);
}

/// Law of N = number of ones: entry k is P(N = k), k = 0..n.
inline std::vector<double> rank_distribution(const BooleanMeasure& m) {
  std::vector<double> dist(static_cast<std::size_t>(m.n()) + 1, 0.0);
  m.for_each_atom([&](BooleanMeasure::Mask mask, double p) { dist[static_cast<std::size_t>(std::popcount(mask))] += p; });
  return dist;
}

/// The k-homogeneous measure P(. | N = k).
inline BooleanMeasure condition_on_rank(const BooleanMeasure& m, int k) {
  if (k < 0 || k > m.n()) throw InvalidArgument("rank outside 0..n");
  std::vector<double> out(m.size(), 0.0);
  double total = 0.0;
  m.for_each_atom([&](BooleanMeasure::Mask mask, double p) {
    if (std::popcount(mask) == k) {
      out[mask] = p;
      total += p;
    }
  });
  if (!(total > 0.0)) throw NullConditioning("rank " + std::to_string(k) + " has zero mass");
  for (double& w : out) w /= total;
  return BooleanMeasure(m.n(), std::move(out), 30);
}

/// Marginal law of the listed coordinates, in the order given.
inline BooleanMeasure project(const BooleanMeasure& m, std::span<const int> coords) {
  if (coords.empty()) throw InvalidArgument("projection onto an empty coordinate set");
  std::vector<bool> seen(static_cast<std::size_t>(m.n()), false);
  for (int c : coords) {
    if (c < 0 || c >= m.n()) throw InvalidArgument("projection coordinate out of range");
    if (seen[static_cast<std::size_t>(c)]) throw InvalidArgument("projection coordinates repeat");
    seen[static_cast<std::size_t>(c)] = true;
  }
  const int k = static_cast<int>(coords.size());
  std::vector<double> out(std::size_t{1} << k, 0.0);
  m.for_each_atom([&](BooleanMeasure::Mask mask, double p) {
    BooleanMeasure::Mask packed = 0;
    for (int i = 0; i < k; ++i)
      if (mask >> coords[static_cast<std::size_t>(i)] & 1U) packed |= BooleanMeasure::Mask{1} << i;
    out[packed] += p;
  });
  return BooleanMeasure(k, std::move(out), 30);
}

inline BooleanMeasure project(const BooleanMeasure& m, std::initializer_list<int> coords) {
  return project(m, std::span<const int>(coords.begin(), coords.size()));
}

/// P(X_j = 1) for each coordinate.
inline std::vector<double> marginals(const BooleanMeasure& m) {
  std::vector<double> p(static_cast<std::size_t>(m.n()), 0.0);
  m.for_each_atom([&](BooleanMeasure::Mask mask, double w) {
    for (int j = 0; j < m.n(); ++j)
      if (mask >> j & 1U) p[static_cast<std::size_t>(j)] += w;
  });
  return p;
}

inline double mean_rank(const BooleanMeasure& m) {
  double mu = 0.0;
  m.for_each_atom([&](BooleanMeasure::Mask mask, double w) { mu += w * std::popcount(mask); });
  return mu;
}

/// Law of the complemented coordinates 1 - X_j.
inline BooleanMeasure complement(const BooleanMeasure& m) {
  std::vector<double> out(m.size(), 0.0);
  const auto full = static_cast<BooleanMeasure::Mask>(m.size() - 1);
  m.for_each_atom([&](BooleanMeasure::Mask mask, double w) { out[full ^ mask] = w; });
  return BooleanMeasure(m.n(), std::move(out), 30);
}

/// Total-variation distance between two measures on the same lattice.
inline double total_variation(const BooleanMeasure& a, const BooleanMeasure& b) {
  if (a.n() != b.n()) throw DimensionMismatch("total variation between different dimensions");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a.masses()[i] - b.masses()[i]);
  return 0.5 * d;
}

}  // namespace rayleigh
