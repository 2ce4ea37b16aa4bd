#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rayleigh/configuration.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/maxflow.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/polynomial.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr int kDefaultExhaustiveCap = 12;
inline constexpr double kCouplingTolerance = 1e-9;
inline constexpr double kRayleighTolerance = 1e-10;

enum class CouplingRelation {
  domination,  // support on x >= y
  covering,    // support on x == y or x covers y
};

struct CouplingAtom {
  Configuration upper;
  Configuration lower;
  double mass;
};

/// Joint law of (upper, lower) whose marginals are the two coupled measures.
struct Coupling {
  int left_n = 0;
  int right_n = 0;
  CouplingRelation relation = CouplingRelation::domination;
  std::vector<CouplingAtom> joint;
};

/// Why a check failed. Which fields are filled depends on `kind`.
struct Violation {
  std::string kind;
  std::string description;
  std::vector<int> coordinates;
  std::vector<Configuration> configurations;
  std::vector<double> point;
  std::vector<double> values;
};

/// Outcome of a dependence check. A refuted verdict always carries a
/// violation; a verdict that holds carries the coupling certificates the
/// check constructed (none for checks that are not coupling-based).
struct CheckVerdict {
  bool holds = false;
  std::vector<Coupling> couplings;
  std::optional<Violation> violation;
  std::string detail;
};

/// Post-hoc validation of a coupling against both marginals and its relation.
inline bool coupling_is_valid(const Coupling& c, const BooleanMeasure& upper, const BooleanMeasure& lower,
                              double tolerance = kCouplingTolerance, std::string* why = nullptr) {
  auto fail = [&](std::string reason) {
    if (why) *why = std::move(reason);
    return false;
  };
  if (c.left_n != upper.n() || c.right_n != lower.n()) return fail("coupling dimensions differ from measures");
  std::vector<double> left(upper.size(), 0.0), right(lower.size(), 0.0);
  for (const auto& atom : c.joint) {
    if (atom.mass < 0.0) return fail("negative coupling mass");
    const bool related = c.relation == CouplingRelation::domination ? atom.upper.dominates(atom.lower)
                                                                     : (atom.upper == atom.lower ||
                                                                        atom.upper.covers(atom.lower));
    if (!related) return fail("pair " + atom.upper.to_string() + "," + atom.lower.to_string() + " outside relation");
    left[static_cast<std::size_t>(atom.upper.mask())] += atom.mass;
    right[static_cast<std::size_t>(atom.lower.mask())] += atom.mass;
  }
  for (std::size_t i = 0; i < left.size(); ++i)
    if (std::abs(left[i] - upper.masses()[i]) > tolerance) return fail("first marginal off at atom " + std::to_string(i));
  for (std::size_t i = 0; i < right.size(); ++i)
    if (std::abs(right[i] - lower.masses()[i]) > tolerance) return fail("second marginal off at atom " + std::to_string(i));
  return true;
}

namespace detail {

inline constexpr std::int64_t kFlowScale = std::int64_t{1} << 50;

/// Rounds masses to integers that sum exactly to kFlowScale (largest remainder).
inline std::vector<std::int64_t> scale_to_flow_units(std::span<const double> masses) {
  double total = 0.0;
  for (double m : masses) total += m;
  std::vector<std::int64_t> units(masses.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] <= 0.0) continue;
    const double exact = masses[i] / total * static_cast<double>(kFlowScale);
    const double whole = std::floor(exact);
    units[i] = static_cast<std::int64_t>(whole);
    assigned += units[i];
    remainders.emplace_back(exact - whole, i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t r = 0; assigned < kFlowScale && !remainders.empty(); r = (r + 1) % remainders.size()) {
    ++units[remainders[r].second];
    ++assigned;
  }
  return units;
}

inline CheckVerdict coupling_check(const BooleanMeasure& upper, const BooleanMeasure& lower,
                                   CouplingRelation relation) {
  if (upper.n() != lower.n())
    throw DimensionMismatch("coupled measures have dimensions " + std::to_string(upper.n()) + " and " +
                            std::to_string(lower.n()));
  const int n = upper.n();
  using Mask = BooleanMeasure::Mask;
  const auto up_units = scale_to_flow_units(upper.masses());
  const auto low_units = scale_to_flow_units(lower.masses());

  std::vector<Mask> left, right;
  std::vector<int> right_index(lower.size(), -1);
  for (std::size_t m = 0; m < upper.size(); ++m)
    if (up_units[m] > 0) left.push_back(static_cast<Mask>(m));
  for (std::size_t m = 0; m < lower.size(); ++m)
    if (low_units[m] > 0) {
      right_index[m] = static_cast<int>(right.size());
      right.push_back(static_cast<Mask>(m));
    }

  const int source = 0;
  const int sink = 1;
  const int left_base = 2;
  const int right_base = left_base + static_cast<int>(left.size());
  MaxFlow flow(right_base + static_cast<int>(right.size()));
  for (std::size_t i = 0; i < left.size(); ++i) flow.add_arc(source, left_base + static_cast<int>(i), up_units[left[i]]);
  for (std::size_t j = 0; j < right.size(); ++j) flow.add_arc(right_base + static_cast<int>(j), sink, low_units[right[j]]);

  struct MiddleArc {
    int id;
    Mask x, y;
  };
  std::vector<MiddleArc> middle;
  auto connect = [&](std::size_t i, Mask y) {
    const int j = right_index[y];
    if (j < 0) return;
    middle.push_back({flow.add_arc(left_base + static_cast<int>(i), right_base + j, MaxFlow::kInfinite), left[i], y});
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Mask x = left[i];
    if (relation == CouplingRelation::covering) {
      connect(i, x);
      for (int b = 0; b < n; ++b)
        if (x >> b & 1U) connect(i, x & ~(Mask{1} << b));
    } else if (static_cast<std::size_t>(1) << std::popcount(x) <= right.size()) {
      for (Mask s = x;; s = (s - 1) & x) {
        connect(i, s);
        if (s == 0) break;
      }
    } else {
      for (Mask y : right)
        if ((y & ~x) == 0) connect(i, y);
    }
  }

  const MaxFlow::Capacity value = flow.solve(source, sink);
  const auto slack = static_cast<MaxFlow::Capacity>(std::ceil(kCouplingTolerance * static_cast<double>(kFlowScale)));
  const double scale = static_cast<double>(kFlowScale);
  const char* name = relation == CouplingRelation::covering ? "covering" : "domination";

  CheckVerdict verdict;
  if (value >= kFlowScale - slack) {
    Coupling c{n, n, relation, {}};
    for (const auto& arc : middle) {
      const auto f = flow.flow(arc.id);
      if (f > 0) c.joint.push_back({Configuration::from_mask(n, arc.x), Configuration::from_mask(n, arc.y),
                                     static_cast<double>(f) / scale});
    }
    verdict.holds = true;
    verdict.detail = std::string(name) + " coupling found; max flow " + std::to_string(static_cast<double>(value) / scale);
    verdict.couplings.push_back(std::move(c));
    return verdict;
  }

  // Right nodes unreachable in the residual graph form a Hall-deficient set B.
  const auto reachable = flow.residual_reachable(source);
  std::vector<Mask> deficient;
  for (std::size_t j = 0; j < right.size(); ++j)
    if (!reachable[static_cast<std::size_t>(right_base) + j]) deficient.push_back(right[j]);

  Violation v;
  if (relation == CouplingRelation::domination) {
    // Generators of the up-set: minimal elements of B.
    std::vector<Mask> generators;
    for (Mask b : deficient) {
      const bool minimal = std::none_of(deficient.begin(), deficient.end(),
                                        [&](Mask o) { return o != b && (o & ~b) == 0; });
      if (minimal) generators.push_back(b);
    }
    auto in_upset = [&](Mask x) {
      return std::any_of(generators.begin(), generators.end(), [&](Mask g) { return (g & ~x) == 0; });
    };
    double nu_a = 0.0, rho_a = 0.0;
    upper.for_each_atom([&](Mask x, double p) { if (in_upset(x)) nu_a += p; });
    lower.for_each_atom([&](Mask x, double p) { if (in_upset(x)) rho_a += p; });
    v.kind = "up_set";
    for (Mask g : generators) v.configurations.push_back(Configuration::from_mask(n, g));
    v.values = {nu_a, rho_a};
    v.description = "up-set generated by the listed configurations has first-measure mass " + std::to_string(nu_a) +
                    " < second-measure mass " + std::to_string(rho_a);
  } else {
    double rho_b = 0.0, nu_nb = 0.0;
    std::vector<char> in_b(lower.size(), 0);
    for (Mask b : deficient) {
      in_b[b] = 1;
      rho_b += lower.mass(b);
    }
    upper.for_each_atom([&](Mask x, double p) {
      bool hit = in_b[x] != 0;
      for (int bit = 0; bit < n && !hit; ++bit)
        if (x >> bit & 1U) hit = in_b[x & ~(Mask{1} << bit)] != 0;
      if (hit) nu_nb += p;
    });
    v.kind = "hall_set";
    for (Mask b : deficient) v.configurations.push_back(Configuration::from_mask(n, b));
    v.values = {nu_nb, rho_b};
    v.description = "listed lower configurations carry mass " + std::to_string(rho_b) +
                    " but their covering neighbourhood carries only " + std::to_string(nu_nb);
  }
  verdict.holds = false;
  verdict.detail = std::string(name) + " refuted; max flow " + std::to_string(static_cast<double>(value) / scale);
  verdict.violation = std::move(v);
  return verdict;
}

inline void require_cap(const BooleanMeasure& m, int cap, const char* what) {
  if (m.n() > cap) throw CapExceeded(what, m.n(), cap);
}

}  // namespace detail

/// Decides nu >= rho (stochastic domination) by max-flow coupling search.
inline CheckVerdict check_domination(const BooleanMeasure& nu, const BooleanMeasure& rho) {
  return detail::coupling_check(nu, rho, CouplingRelation::domination);
}

/// Decides whether nu stochastically covers rho.
inline CheckVerdict check_covering(const BooleanMeasure& nu, const BooleanMeasure& rho) {
  return detail::coupling_check(nu, rho, CouplingRelation::covering);
}

/// Exhaustive stochastic covering property check.
///
/// For every coordinate set S and every pair x covering y in {0,1}^S with
/// both conditioning events of positive mass, the law conditioned on the
/// lower assignment y must cover the law conditioned on the higher x.
inline CheckVerdict check_scp(const BooleanMeasure& m, int cap = kDefaultExhaustiveCap) {
  detail::require_cap(m, cap, "check_scp");
  using Mask = BooleanMeasure::Mask;
  const int n = m.n();
  const Mask full = static_cast<Mask>(m.size() - 1);
  long checks = 0;
  for (Mask s = 1; s < full; ++s) {
    const int fixed = std::popcount(s);
    const int free_n = n - fixed;
    std::vector<int> free_coords, fixed_coords;
    for (int j = 0; j < n; ++j) (s >> j & 1U ? fixed_coords : free_coords).push_back(j);
    // conditionals[a] holds the unnormalized law on free coordinates given X_S = a,
    // where a is a packed assignment over the fixed coordinates.
    std::vector<std::vector<double>> bucket(std::size_t{1} << fixed, std::vector<double>(std::size_t{1} << free_n, 0.0));
    std::vector<double> totals(std::size_t{1} << fixed, 0.0);
    m.for_each_atom([&](Mask x, double p) {
      Mask a = 0, f = 0;
      for (int i = 0; i < fixed; ++i)
        if (x >> fixed_coords[static_cast<std::size_t>(i)] & 1U) a |= Mask{1} << i;
      for (int i = 0; i < free_n; ++i)
        if (x >> free_coords[static_cast<std::size_t>(i)] & 1U) f |= Mask{1} << i;
      bucket[a][f] += p;
      totals[a] += p;
    });
    for (Mask y = 0; y < (Mask{1} << fixed); ++y) {
      if (!(totals[y] > 0.0)) continue;
      for (int b = 0; b < fixed; ++b) {
        if (y >> b & 1U) continue;
        const Mask x = y | (Mask{1} << b);
        if (!(totals[x] > 0.0)) continue;
        ++checks;
        const auto lower_law = BooleanMeasure::from_weights(free_n, bucket[y], 30);
        const auto upper_law = BooleanMeasure::from_weights(free_n, bucket[x], 30);
        auto verdict = check_covering(lower_law, upper_law);
        if (!verdict.holds) {
          Violation v;
          v.kind = "scp";
          v.coordinates = fixed_coords;
          v.configurations = {Configuration::from_mask(fixed, y), Configuration::from_mask(fixed, x)};
          v.values = verdict.violation->values;
          v.description = "conditional law given X_S=" + v.configurations[0].to_string() +
                          " does not cover the one given X_S=" + v.configurations[1].to_string() + ": " +
                          verdict.violation->description;
          CheckVerdict out;
          out.holds = false;
          out.violation = std::move(v);
          out.detail = "SCP refuted after " + std::to_string(checks) + " covering checks";
          return out;
        }
      }
    }
  }
  CheckVerdict out;
  out.holds = true;
  out.detail = "SCP holds; " + std::to_string(checks) + " covering checks passed";
  return out;
}

/// Negative cylinder dependence: P(X_S = 1) <= prod p_j and P(X_S = 0) <= prod (1 - p_j) for every S.
inline CheckVerdict check_negative_cylinder(const BooleanMeasure& m, int cap = kDefaultExhaustiveCap) {
  detail::require_cap(m, cap, "check_negative_cylinder");
  using Mask = BooleanMeasure::Mask;
  const int n = m.n();
  const std::size_t size = m.size();
  std::vector<double> up(m.masses().begin(), m.masses().end());
  std::vector<double> sub(m.masses().begin(), m.masses().end());
  for (int b = 0; b < n; ++b)
    for (std::size_t s = 0; s < size; ++s) {
      if (!(s >> b & 1U)) up[s] += up[s | (std::size_t{1} << b)];
      else sub[s] += sub[s ^ (std::size_t{1} << b)];
    }
  const auto p = marginals(m);
  std::vector<double> prod_one(size, 1.0), prod_zero(size, 1.0);
  const Mask full = static_cast<Mask>(size - 1);
  for (Mask s = 1; s <= full; ++s) {
    const int low = std::countr_zero(s);
    const Mask rest = s & (s - 1);
    prod_one[s] = prod_one[rest] * p[static_cast<std::size_t>(low)];
    prod_zero[s] = prod_zero[rest] * (1.0 - p[static_cast<std::size_t>(low)]);
    if (std::popcount(s) < 2) continue;
    const double ones = up[s];
    const double zeros = sub[full ^ s];
    auto exceeds = [](double lhs, double rhs) { return lhs > rhs * (1.0 + 1e-9) + 1e-12; };
    const bool bad_ones = exceeds(ones, prod_one[s]);
    if (bad_ones || exceeds(zeros, prod_zero[s])) {
      Violation v;
      v.kind = bad_ones ? "cylinder_ones" : "cylinder_zeros";
      for (int j = 0; j < n; ++j)
        if (s >> j & 1U) v.coordinates.push_back(j);
      v.values = bad_ones ? std::vector<double>{ones, prod_one[s]} : std::vector<double>{zeros, prod_zero[s]};
      v.description = std::string(bad_ones ? "P(all ones on S) = " : "P(all zeros on S) = ") +
                      std::to_string(v.values[0]) + " exceeds product " + std::to_string(v.values[1]);
      CheckVerdict out;
      out.holds = false;
      out.violation = std::move(v);
      out.detail = "negative cylinder dependence refuted";
      return out;
    }
  }
  CheckVerdict out;
  out.holds = true;
  out.detail = "negative cylinder inequalities hold for all " + std::to_string(size - 1) + " coordinate sets";
  return out;
}

/// 200 uniform points in [-3,3]^n plus the all-ones point.
inline std::vector<std::vector<double>> default_rayleigh_grid(int n, SeededRng& rng, int points = 200,
                                                             double half_width = 3.0) {
  std::vector<std::vector<double>> grid;
  grid.reserve(static_cast<std::size_t>(points) + 1);
  grid.emplace_back(static_cast<std::size_t>(n), 1.0);
  for (int k = 0; k < points; ++k) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-half_width, half_width);
    grid.push_back(std::move(x));
  }
  return grid;
}

/// Searches for a real point where F_i F_j < F F_ij.
///
/// Writing F = A + z_i B + z_j C + z_i z_j D with A..D free of z_i, z_j, the
/// Rayleigh difference is BC - AD. A violation is reported when it falls below
/// -1e-10 times max(1, |BC| + |AD|). Passing is only necessary evidence for the
/// strong Rayleigh property.
inline CheckVerdict rayleigh_refute(const BooleanMeasure& m, const std::vector<std::vector<double>>& grid,
                                    std::optional<std::vector<std::pair<int, int>>> pairs = std::nullopt) {
  using Mask = BooleanMeasure::Mask;
  const int n = m.n();
  std::vector<std::pair<int, int>> index_pairs;
  if (pairs) {
    index_pairs = *pairs;
    for (auto [i, j] : index_pairs)
      if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw InvalidArgument("invalid coordinate pair");
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) index_pairs.emplace_back(i, j);
  }
  std::vector<Mask> atoms;
  std::vector<double> weights;
  m.for_each_atom([&](Mask x, double p) {
    atoms.push_back(x);
    weights.push_back(p);
  });
  const std::size_t pair_count = index_pairs.size();
  std::vector<double> a(pair_count), b(pair_count), c(pair_count), d(pair_count);
  double worst = 0.0;
  for (const auto& point : grid) {
    if (static_cast<int>(point.size()) != n) throw DimensionMismatch("grid point dimension differs from n");
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
    std::fill(c.begin(), c.end(), 0.0);
    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t t = 0; t < atoms.size(); ++t) {
      const Mask x = atoms[t];
      double nonzero_product = weights[t];
      int zeros = 0;
      for (int l = 0; l < n; ++l) {
        if (!(x >> l & 1U)) continue;
        const double v = point[static_cast<std::size_t>(l)];
        if (v == 0.0) ++zeros;
        else nonzero_product *= v;
      }
      for (std::size_t q = 0; q < pair_count; ++q) {
        const auto [i, j] = index_pairs[q];
        const bool has_i = x >> i & 1U, has_j = x >> j & 1U;
        const double vi = point[static_cast<std::size_t>(i)], vj = point[static_cast<std::size_t>(j)];
        int rest_zeros = zeros - (has_i && vi == 0.0) - (has_j && vj == 0.0);
        if (rest_zeros > 0) continue;
        double w = nonzero_product;
        if (has_i && vi != 0.0) w /= vi;
        if (has_j && vj != 0.0) w /= vj;
        (has_i ? (has_j ? d : b) : (has_j ? c : a))[q] += w;
      }
    }
    for (std::size_t q = 0; q < pair_count; ++q) {
      const double bc = b[q] * c[q], ad = a[q] * d[q];
      const double delta = bc - ad;
      worst = std::min(worst, delta);
      if (delta < -kRayleighTolerance * std::max(1.0, std::abs(bc) + std::abs(ad))) {
        Violation v;
        v.kind = "rayleigh";
        v.coordinates = {index_pairs[q].first, index_pairs[q].second};
        v.point = point;
        v.values = {delta};
        v.description = "F_i F_j - F F_ij = " + std::to_string(delta) + " at the listed point";
        CheckVerdict out;
        out.holds = false;
        out.violation = std::move(v);
        out.detail = "Rayleigh inequality refuted";
        return out;
      }
    }
  }
  CheckVerdict out;
  out.holds = true;
  out.detail = "no Rayleigh violation on " + std::to_string(grid.size()) + " points x " + std::to_string(pair_count) +
               " pairs (necessary condition only; min difference " + std::to_string(worst) + ")";
  return out;
}

/// P_{k+1} covers P_k for every adjacent pair of ranks with positive mass.
inline CheckVerdict check_rank_covering(const BooleanMeasure& m, int cap = kDefaultExhaustiveCap) {
  detail::require_cap(m, cap, "check_rank_covering");
  const auto ranks = rank_distribution(m);
  CheckVerdict out;
  out.holds = true;
  int pairs = 0;
  for (int k = 0; k + 1 <= m.n(); ++k) {
    if (!(ranks[static_cast<std::size_t>(k)] > 0.0 && ranks[static_cast<std::size_t>(k) + 1] > 0.0)) continue;
    ++pairs;
    auto verdict = check_covering(condition_on_rank(m, k + 1), condition_on_rank(m, k));
    if (!verdict.holds) {
      Violation v = std::move(*verdict.violation);
      v.kind = "rank_covering";
      v.coordinates = {k, k + 1};
      v.description = "P_" + std::to_string(k + 1) + " does not cover P_" + std::to_string(k) + ": " + v.description;
      CheckVerdict bad;
      bad.violation = std::move(v);
      bad.detail = "rank covering refuted";
      return bad;
    }
    out.couplings.push_back(std::move(verdict.couplings.front()));
  }
  out.detail = pairs == 0 ? "single realizable rank; holds vacuously"
                          : "rank covering holds for " + std::to_string(pairs) + " adjacent rank pairs";
  return out;
}

/// Real-rootedness of the diagonal generating polynomial sum_k P(N=k) z^k.
///
/// Coefficients below 1e-14 times the largest are treated as zero. Roots come
/// from the real companion matrix; a root is real when |Im| <= tol (1 + |root|).
/// An m-fold real root comes back from the eigensolver as a cluster of radius
/// about eps^(1/m), so roots in a cluster of m are allowed a relative
/// imaginary part of max(tol, 10 * 1e-13^(1/m)).
inline CheckVerdict check_univariate_real_rooted(const BooleanMeasure& m, double tol = 1e-6) {
  auto coeffs = rank_distribution(m);
  const double largest = *std::max_element(coeffs.begin(), coeffs.end());
  if (!(largest > 0.0)) throw NumericalError("rank generating polynomial is identically zero");
  for (double& c : coeffs)
    if (c <= 1e-14 * largest) c = 0.0;
  std::size_t low = 0, high = coeffs.size() - 1;
  while (coeffs[low] == 0.0) ++low;
  while (coeffs[high] == 0.0) --high;
  std::vector<double> trimmed(coeffs.begin() + static_cast<std::ptrdiff_t>(low),
                              coeffs.begin() + static_cast<std::ptrdiff_t>(high) + 1);
  const auto roots = real_companion_roots(trimmed);
  // single-linkage clusters at relative distance 1e-2
  std::vector<std::size_t> parent(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= 1e-2 * (1.0 + std::abs(roots[i]))) parent[find(i)] = find(j);
  std::vector<int> cluster_size(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i) ++cluster_size[find(i)];
  double worst = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    const int mult = cluster_size[find(i)];
    const double allowed = mult > 1 ? std::max(tol, 10.0 * std::pow(1e-13, 1.0 / mult)) : tol;
    const double excess = std::abs(r.imag()) / (1.0 + std::abs(r));
    worst = std::max(worst, excess);
    if (excess > allowed) {
      Violation v;
      v.kind = "real_rooted";
      v.point = {r.real(), r.imag()};
      v.values = coeffs;
      v.description = "rank generating polynomial has the non-real root " + std::to_string(r.real()) +
                      (r.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(r.imag())) + "i";
      CheckVerdict out;
      out.violation = std::move(v);
      out.detail = "real-rootedness refuted";
      return out;
    }
  }
  CheckVerdict out;
  out.holds = true;
  out.detail = "all " + std::to_string(roots.size() + low) + " roots real (max relative imaginary part " +
               std::to_string(worst) + ")";
  return out;
}

}  // namespace rayleigh
