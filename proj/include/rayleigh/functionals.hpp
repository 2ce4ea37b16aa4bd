#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rayleigh/configuration.hpp"
#include "rayleigh/continuous.hpp"
#include "rayleigh/dependence.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/graph.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr int kLipschitzExhaustiveCap = 22;
inline constexpr double kEuclideanLonelyConstant = 6.0;

/// Real function of a configuration with a declared Hamming-Lipschitz constant.
struct DiscreteFunctional {
  std::string name;
  int arity = 0;
  double lipschitz = 1.0;
  std::function<double(const Configuration&)> evaluate;

  double operator()(const Configuration& x) const {
    if (x.size() != arity)
      throw DimensionMismatch(name + " expects " + std::to_string(arity) + " coordinates, got " + std::to_string(x.size()));
    return evaluate(x);
  }
};

/// Real function of a point configuration, Lipschitz for single point insertions/removals.
struct PointFunctional {
  std::string name;
  double lipschitz = 1.0;
  std::function<double(const PointConfiguration&)> evaluate;

  double operator()(const PointConfiguration& x) const { return evaluate(x); }
};

namespace detail {

inline std::vector<int> degrees(const Graph& g, const Configuration& x) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int e = 0; e < g.edge_count(); ++e)
    if (x[e]) {
      ++deg[static_cast<std::size_t>(g.edge(e).u)];
      ++deg[static_cast<std::size_t>(g.edge(e).v)];
    }
  return deg;
}

}  // namespace detail

/// Half the number of odd-degree vertices of the edge subset; constant 1.
inline DiscreteFunctional half_odd_degree(const Graph& g) {
  return {"half_odd_degree", g.edge_count(), 1.0, [g](const Configuration& x) {
            int odd = 0;
            for (int d : detail::degrees(g, x)) odd += d & 1;
            return 0.5 * odd;
          }};
}

/// Number of degree-1 vertices; constant 2.
inline DiscreteFunctional leaf_count(const Graph& g) {
  return {"leaf_count", g.edge_count(), 2.0, [g](const Configuration& x) {
            int leaves = 0;
            for (int d : detail::degrees(g, x)) leaves += d == 1;
            return static_cast<double>(leaves);
          }};
}

/// sum_j c_j x_j with c_j in {-1, 0, 1}; constant 1.
inline DiscreteFunctional indicator_sum(std::vector<int> coeffs) {
  for (int c : coeffs)
    if (c < -1 || c > 1) throw InvalidArgument("indicator_sum coefficients must be -1, 0 or 1");
  const int n = static_cast<int>(coeffs.size());
  return {"indicator_sum", n, 1.0, [coeffs = std::move(coeffs)](const Configuration& x) {
            double s = 0.0;
            for (std::size_t j = 0; j < coeffs.size(); ++j)
              if (x[static_cast<int>(j)]) s += coeffs[j];
            return s;
          }};
}

/// The counting function N; constant 1.
inline DiscreteFunctional rank_functional(int n) {
  return {"rank", n, 1.0, [](const Configuration& x) { return static_cast<double>(x.count()); }};
}

/// Same evaluator with a different declared constant.
inline DiscreteFunctional with_declared_lipschitz(DiscreteFunctional f, double c) {
  if (!(c > 0.0)) throw InvalidArgument("declared Lipschitz constant must be positive");
  f.lipschitz = c;
  return f;
}

/// f / c, declared with constant 1.
inline DiscreteFunctional rescaled(const DiscreteFunctional& f) {
  const double c = f.lipschitz;
  return {f.name + "/" + std::to_string(c), f.arity, 1.0, [f, c](const Configuration& x) { return f.evaluate(x) / c; }};
}

enum class LonelyMetric { euclidean, hyperbolic };

/// Points with no other configuration point within distance `radius`.
///
/// For the Euclidean metric the declared constant defaults to 6 (at most six
/// points at mutual distance > r fit within distance r of a point). The
/// hyperbolic constant has no built-in value and must be supplied.
inline PointFunctional lonely_points(double radius, LonelyMetric metric = LonelyMetric::euclidean,
                                     std::optional<double> constant = std::nullopt) {
  if (!(radius > 0.0)) throw InvalidArgument("lonely_points radius must be positive");
  double c = kEuclideanLonelyConstant;
  if (metric == LonelyMetric::hyperbolic) {
    if (!constant) throw InvalidArgument("hyperbolic lonely_points needs a user-supplied Lipschitz constant");
  }
  if (constant) {
    if (!(*constant > 0.0)) throw InvalidArgument("declared Lipschitz constant must be positive");
    c = *constant;
  }
  const bool hyperbolic = metric == LonelyMetric::hyperbolic;
  return {hyperbolic ? "lonely_points_hyperbolic" : "lonely_points", c, [radius, hyperbolic](const PointConfiguration& x) {
            const auto& p = x.points;
            if (hyperbolic)
              for (const auto& z : p)
                if (std::abs(z) >= 1.0) throw InvalidArgument("hyperbolic distance needs points inside the unit disk");
            auto distance = [&](const Complex& a, const Complex& b) {
              if (!hyperbolic) return std::abs(a - b);
              return 2.0 * std::atanh(std::abs(a - b) / std::abs(1.0 - std::conj(a) * b));
            };
            int lonely = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
              bool alone = true;
              for (std::size_t j = 0; j < p.size() && alone; ++j)
                if (j != i && distance(p[i], p[j]) <= radius) alone = false;
              lonely += alone;
            }
            return static_cast<double>(lonely);
          }};
}

/// Point count; constant 1.
inline PointFunctional point_count() {
  return {"point_count", 1.0, [](const PointConfiguration& x) { return static_cast<double>(x.size()); }};
}

inline PointFunctional rescaled(const PointFunctional& f) {
  const double c = f.lipschitz;
  return {f.name + "/" + std::to_string(c), 1.0, [f, c](const PointConfiguration& x) { return f.evaluate(x) / c; }};
}

enum class LipschitzMode { exhaustive, randomized };

/// Checks |f(x) - f(x')| <= declared constant over single-coordinate flips.
inline CheckVerdict verify_lipschitz(const DiscreteFunctional& f, LipschitzMode mode = LipschitzMode::exhaustive,
                                     long trials = 10000, std::uint64_t seed = 0) {
  const int n = f.arity;
  const double limit = f.lipschitz * (1.0 + 1e-12) + 1e-12;
  auto refute = [&](const Configuration& x, const Configuration& y, double fx, double fy) {
    Violation v;
    v.kind = "lipschitz";
    v.configurations = {x, y};
    v.values = {fx, fy, std::abs(fx - fy)};
    v.description = f.name + " changes by " + std::to_string(std::abs(fx - fy)) + " > " +
                    std::to_string(f.lipschitz) + " between " + x.to_string() + " and " + y.to_string();
    CheckVerdict out;
    out.violation = std::move(v);
    out.detail = "Lipschitz constant refuted";
    return out;
  };
  long pairs = 0;
  if (mode == LipschitzMode::exhaustive) {
    if (n > kLipschitzExhaustiveCap) throw CapExceeded("verify_lipschitz exhaustive", n, kLipschitzExhaustiveCap);
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<double> values(size);
    for (std::uint64_t m = 0; m < size; ++m) values[m] = f(Configuration::from_mask(n, m));
    for (std::uint64_t m = 0; m < size; ++m)
      for (int i = 0; i < n; ++i) {
        if (m >> i & 1U) continue;
        const std::uint64_t up = m | (std::uint64_t{1} << i);
        ++pairs;
        if (std::abs(values[m] - values[up]) > limit)
          return refute(Configuration::from_mask(n, m), Configuration::from_mask(n, up), values[m], values[up]);
      }
  } else {
    if (n < 1) throw InvalidArgument("randomized Lipschitz check needs at least one coordinate");
    SeededRng rng(seed);
    for (long t = 0; t < trials; ++t) {
      Configuration x(n);
      for (int j = 0; j < n; ++j) x.set(j, rng.bernoulli(0.5));
      Configuration y = x;
      y.flip(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
      const double fx = f(x), fy = f(y);
      ++pairs;
      if (std::abs(fx - fy) > limit) return refute(x, y, fx, fy);
    }
  }
  CheckVerdict out;
  out.holds = true;
  out.detail = "constant " + std::to_string(f.lipschitz) + " holds on " + std::to_string(pairs) + " flip pairs";
  return out;
}

}  // namespace rayleigh
