#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "rayleigh/error.hpp"

namespace rayleigh {

enum class BoundFamily {
  homogeneous_scp,        // exp(-a^2 / 8k)
  homogeneous_two_sided,  // 2 exp(-a^2 / 8k)
  k_to_n,                 // exp(-a^2 / 4n)
  general_one_sided,      // 3 exp(-a^2 / (16 (a + 2 mu)))
  general_two_sided,      // 5 exp(-a^2 / (16 (a + 2 mu)))
  spanning_tree,          // exp(-a^2 / 8|V|)
  poisson_hoeffding,      // e^a (mu / (a + mu))^(a + mu)
  azuma,                  // exp(-a^2 / 2n)
  mcdiarmid,              // exp(-2 a^2 / n)
};

inline constexpr std::array<BoundFamily, 9> kAllBoundFamilies = {
    BoundFamily::homogeneous_scp,   BoundFamily::homogeneous_two_sided, BoundFamily::k_to_n,
    BoundFamily::general_one_sided, BoundFamily::general_two_sided,     BoundFamily::spanning_tree,
    BoundFamily::poisson_hoeffding, BoundFamily::azuma,                 BoundFamily::mcdiarmid};

inline std::string_view bound_family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::homogeneous_scp: return "homogeneous_scp";
    case BoundFamily::homogeneous_two_sided: return "homogeneous_two_sided";
    case BoundFamily::k_to_n: return "k_to_n";
    case BoundFamily::general_one_sided: return "general_one_sided";
    case BoundFamily::general_two_sided: return "general_two_sided";
    case BoundFamily::spanning_tree: return "spanning_tree";
    case BoundFamily::poisson_hoeffding: return "poisson_hoeffding";
    case BoundFamily::azuma: return "azuma";
    case BoundFamily::mcdiarmid: return "mcdiarmid";
  }
  return "unknown";
}

inline BoundFamily parse_bound_family(std::string_view name) {
  for (BoundFamily f : kAllBoundFamilies)
    if (bound_family_name(f) == name) return f;
  throw InvalidArgument("unknown bound family '" + std::string(name) + "'");
}

/// Two-sided families bound P(|f - Ef| >= a); the rest bound P(f - Ef >= a).
inline bool is_two_sided(BoundFamily f) {
  return f == BoundFamily::homogeneous_two_sided || f == BoundFamily::general_two_sided;
}

/// A bound family with its parameters. Only the size parameter the family
/// uses needs to be set: k (homogeneous), n (k_to_n, azuma, mcdiarmid),
/// mu (general, poisson_hoeffding), vertices (spanning_tree).
struct BoundSpec {
  BoundFamily family = BoundFamily::homogeneous_scp;
  double a = 0.0;
  std::optional<double> k;
  std::optional<double> n;
  std::optional<double> mu;
  std::optional<double> vertices;
};

namespace detail {

inline double require_size(const std::optional<double>& v, const char* name, BoundFamily f) {
  if (!v) throw InvalidArgument(std::string(bound_family_name(f)) + " needs parameter " + name);
  if (!(*v >= 1.0) || !std::isfinite(*v)) throw InvalidArgument(std::string(name) + " must be a finite value >= 1");
  return *v;
}

inline double require_mean(const std::optional<double>& v, BoundFamily f, bool strictly_positive) {
  if (!v) throw InvalidArgument(std::string(bound_family_name(f)) + " needs parameter mu");
  if (!std::isfinite(*v) || *v < 0.0 || (strictly_positive && *v == 0.0))
    throw InvalidArgument(strictly_positive ? "mu must be positive" : "mu must be nonnegative");
  return *v;
}

}  // namespace detail

/// Closed-form value of the bound at threshold spec.a.
inline double eval_bound(const BoundSpec& spec) {
  const double a = spec.a;
  if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidArgument("threshold a must be finite and nonnegative");
  const BoundFamily f = spec.family;
  switch (f) {
    case BoundFamily::homogeneous_scp:
      return std::exp(-a * a / (8.0 * detail::require_size(spec.k, "k", f)));
    case BoundFamily::homogeneous_two_sided:
      return 2.0 * std::exp(-a * a / (8.0 * detail::require_size(spec.k, "k", f)));
    case BoundFamily::k_to_n:
      return std::exp(-a * a / (4.0 * detail::require_size(spec.n, "n", f)));
    case BoundFamily::general_one_sided:
    case BoundFamily::general_two_sided: {
      const double mu = detail::require_mean(spec.mu, f, false);
      const double prefactor = f == BoundFamily::general_one_sided ? 3.0 : 5.0;
      if (a == 0.0) return prefactor;
      return prefactor * std::exp(-a * a / (16.0 * (a + 2.0 * mu)));
    }
    case BoundFamily::spanning_tree:
      return std::exp(-a * a / (8.0 * detail::require_size(spec.vertices, "vertices", f)));
    case BoundFamily::poisson_hoeffding: {
      const double mu = detail::require_mean(spec.mu, f, true);
      return std::exp(a + (a + mu) * (std::log(mu) - std::log(a + mu)));
    }
    case BoundFamily::azuma:
      return std::exp(-a * a / (2.0 * detail::require_size(spec.n, "n", f)));
    case BoundFamily::mcdiarmid:
      return std::exp(-2.0 * a * a / detail::require_size(spec.n, "n", f));
  }
  throw InvalidArgument("unknown bound family");
}

/// Same family and parameters at another threshold.
inline double eval_bound(BoundSpec spec, double a) {
  spec.a = a;
  return eval_bound(spec);
}

}  // namespace rayleigh
