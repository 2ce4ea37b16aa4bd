#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rayleigh/bounds.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/functionals.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/parallel.hpp"
#include "rayleigh/rng.hpp"
#include "rayleigh/stats.hpp"

namespace rayleigh {

inline constexpr int kExactTailCap = 20;
inline constexpr int kMartingaleCap = 14;
inline constexpr long kMinimumTrials = 100;
inline constexpr double kTailConfidence = 0.99;
inline constexpr double kThresholdSlack = 1e-12;

/// Tail probabilities of g = f / rescaling around its mean, one row per threshold.
///
/// For exact reports the confidence columns equal the tail itself. Monte
/// Carlo reports estimate the mean from the first `centering_trials` draws and
/// the tails from the remaining `tail_trials`.
struct TailReport {
  std::string functional;
  std::vector<double> grid;
  std::vector<double> tail, tail_lo, tail_hi;
  std::vector<double> two_sided, two_sided_lo, two_sided_hi;
  bool exact = false;
  double mean = 0.0;
  double mean_standard_error = 0.0;
  double rescaling = 1.0;
  long trials = 0;
  long centering_trials = 0;
  long tail_trials = 0;
  std::uint64_t seed = 0;
  double confidence = kTailConfidence;
};

namespace detail {

inline void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("threshold grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw InvalidArgument("thresholds must be finite and nonnegative");
    if (i > 0 && grid[i] < grid[i - 1]) throw InvalidArgument("thresholds must be sorted in increasing order");
  }
}

inline bool reaches(double deviation, double a) { return deviation >= a - kThresholdSlack; }

}  // namespace detail

/// n equispaced thresholds from `lower` to `upper` inclusive.
inline std::vector<double> linear_grid(double lower, double upper, int points = 20) {
  if (points < 1 || !(upper >= lower)) throw InvalidArgument("invalid grid range");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = points == 1 ? upper : lower + (upper - lower) * i / (points - 1);
  return grid;
}

/// Default grid: 20 points from 0.1 sd to the range bound, or
/// range/20 .. range when the spread is degenerate.
inline std::vector<double> default_grid(double standard_deviation, double range_bound, int points = 20) {
  double lower = 0.1 * standard_deviation;
  if (!(lower > 0.0) || lower >= range_bound) lower = range_bound / points;
  return linear_grid(lower, range_bound, points);
}

/// Thresholds n i / points for i = 1..points, spanning (0, n].
inline std::vector<double> span_grid(double n, int points = 20) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) grid[static_cast<std::size_t>(i - 1)] = n * i / points;
  return grid;
}

/// Exact tails of f / c under m by enumeration (c = declared constant).
inline TailReport exact_tail(const BooleanMeasure& m, const DiscreteFunctional& f, const std::vector<double>& grid) {
  if (m.n() > kExactTailCap) throw CapExceeded("exact_tail", m.n(), kExactTailCap);
  if (f.arity != m.n()) throw DimensionMismatch("functional arity differs from measure dimension");
  detail::validate_grid(grid);
  TailReport r;
  r.functional = f.name;
  r.grid = grid;
  r.exact = true;
  r.rescaling = f.lipschitz;
  std::vector<std::pair<double, double>> values;
  m.for_each_atom([&](BooleanMeasure::Mask x, double p) { values.emplace_back(p, f(m.configuration(x)) / f.lipschitz); });
  double mean = 0.0;
  for (auto [p, v] : values) mean += p * v;
  r.mean = mean;
  for (double a : grid) {
    double one = 0.0, two = 0.0;
    for (auto [p, v] : values) {
      if (detail::reaches(v - mean, a)) one += p;
      if (detail::reaches(std::abs(v - mean), a)) two += p;
    }
    r.tail.push_back(std::min(one, 1.0));
    r.two_sided.push_back(std::min(two, 1.0));
  }
  r.tail_lo = r.tail_hi = r.tail;
  r.two_sided_lo = r.two_sided_hi = r.two_sided;
  return r;
}

struct MonteCarloOptions {
  long trials = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t stream_offset = 0;  // trial i uses stream stream_offset + i
  double confidence = kTailConfidence;
};

namespace detail {

template <class Sampler, class Eval>
std::vector<double> draw_values(const Sampler& sample, const Eval& eval, const MonteCarloOptions& opt) {
  std::vector<double> values(static_cast<std::size_t>(opt.trials));
  run_trials(opt.trials, opt.workers, [&](long t) {
    SeededRng rng(opt.seed, opt.stream_offset + static_cast<std::uint64_t>(t));
    values[static_cast<std::size_t>(t)] = static_cast<double>(eval(sample(rng)));
  });
  return values;
}

}  // namespace detail

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  long trials = 0;
};

/// Sample mean of eval(sample(rng)) over independent trials.
template <class Sampler, class Eval>
MeanEstimate estimate_mean(const Sampler& sample, const Eval& eval, const MonteCarloOptions& opt) {
  if (opt.trials < 2) throw InvalidArgument("a mean estimate needs at least two trials");
  const auto values = detail::draw_values(sample, eval, opt);
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(values.size())), opt.trials};
}

/// Monte Carlo tails of eval / lipschitz with split-sample centering and
/// Clopper-Pearson bounds.
template <class Sampler, class Eval>
TailReport estimate_tail(const Sampler& sample, const Eval& eval, double lipschitz, const std::vector<double>& grid,
                         const MonteCarloOptions& opt, std::string name = "") {
  if (opt.trials < kMinimumTrials)
    throw InvalidArgument("Monte Carlo tails need at least " + std::to_string(kMinimumTrials) + " trials");
  if (!(lipschitz > 0.0)) throw InvalidArgument("declared Lipschitz constant must be positive");
  detail::validate_grid(grid);
  auto values = detail::draw_values(sample, eval, opt);
  for (double& v : values) v /= lipschitz;

  TailReport r;
  r.functional = std::move(name);
  r.grid = grid;
  r.rescaling = lipschitz;
  r.trials = opt.trials;
  r.seed = opt.seed;
  r.confidence = opt.confidence;
  r.centering_trials = opt.trials / 2;
  r.tail_trials = opt.trials - r.centering_trials;
  const auto split = static_cast<std::size_t>(r.centering_trials);
  double sum = 0.0;
  for (std::size_t i = 0; i < split; ++i) sum += values[i];
  r.mean = sum / static_cast<double>(split);
  double ss = 0.0;
  for (std::size_t i = 0; i < split; ++i) ss += (values[i] - r.mean) * (values[i] - r.mean);
  r.mean_standard_error = split > 1 ? std::sqrt(ss / static_cast<double>(split - 1) / static_cast<double>(split)) : 0.0;
  for (double a : grid) {
    long one = 0, two = 0;
    for (std::size_t i = split; i < values.size(); ++i) {
      one += detail::reaches(values[i] - r.mean, a);
      two += detail::reaches(std::abs(values[i] - r.mean), a);
    }
    const auto n = r.tail_trials;
    const Interval c1 = clopper_pearson(one, n, opt.confidence);
    const Interval c2 = clopper_pearson(two, n, opt.confidence);
    r.tail.push_back(static_cast<double>(one) / static_cast<double>(n));
    r.tail_lo.push_back(c1.lo);
    r.tail_hi.push_back(c1.hi);
    r.two_sided.push_back(static_cast<double>(two) / static_cast<double>(n));
    r.two_sided_lo.push_back(c2.lo);
    r.two_sided_hi.push_back(c2.hi);
  }
  return r;
}

/// E(f | N = k) for each rank k = 0..n; empty where P(N = k) = 0.
inline std::vector<std::optional<double>> phi_profile(const BooleanMeasure& m, const DiscreteFunctional& f) {
  if (m.n() > kExactTailCap) throw CapExceeded("phi_profile", m.n(), kExactTailCap);
  if (f.arity != m.n()) throw DimensionMismatch("functional arity differs from measure dimension");
  const auto n = static_cast<std::size_t>(m.n());
  std::vector<double> mass(n + 1, 0.0), weighted(n + 1, 0.0);
  m.for_each_atom([&](BooleanMeasure::Mask x, double p) {
    const auto r = static_cast<std::size_t>(std::popcount(x));
    mass[r] += p;
    weighted[r] += p * f(m.configuration(x));
  });
  std::vector<std::optional<double>> phi(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    if (mass[k] > 0.0) phi[k] = weighted[k] / mass[k];
  return phi;
}

enum class RevelationForm {
  coordinate,  // reveal coordinates one at a time in a fixed order
  point,       // reveal the points of a homogeneous configuration in random order
};

/// One path of the Doob martingale M_j = E(f | F_j) - E f, with its probability.
/// `revealed` lists coordinates (coordinate form) or points (point form) in order.
struct MartingalePath {
  std::vector<double> values;
  std::vector<int> revealed;
  double probability = 0.0;
};

namespace detail {

inline std::vector<int> resolve_ordering(int n, const std::vector<int>& ordering) {
  if (ordering.empty()) {
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
    return id;
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(ordering.size()) != n) throw InvalidArgument("ordering must list every coordinate once");
  for (int c : ordering) {
    if (c < 0 || c >= n || seen[static_cast<std::size_t>(c)]) throw InvalidArgument("ordering must list every coordinate once");
    seen[static_cast<std::size_t>(c)] = 1;
  }
  return ordering;
}

/// Superset sums A(S) = sum_{T ⊇ S} P(T) f(T) and B(S) = sum_{T ⊇ S} P(T).
inline void superset_sums(const BooleanMeasure& m, const DiscreteFunctional& f, std::vector<double>& a,
                          std::vector<double>& b) {
  a.assign(m.size(), 0.0);
  b.assign(m.size(), 0.0);
  m.for_each_atom([&](BooleanMeasure::Mask x, double p) {
    a[x] = p * f(m.configuration(x));
    b[x] = p;
  });
  for (int bit = 0; bit < m.n(); ++bit)
    for (std::size_t s = 0; s < m.size(); ++s)
      if (!(s >> bit & 1U)) {
        a[s] += a[s | (std::size_t{1} << bit)];
        b[s] += b[s | (std::size_t{1} << bit)];
      }
}

inline void require_martingale_inputs(const BooleanMeasure& m, const DiscreteFunctional& f, RevelationForm form) {
  if (m.n() > kMartingaleCap) throw CapExceeded("martingale_trace", m.n(), kMartingaleCap);
  if (f.arity != m.n()) throw DimensionMismatch("functional arity differs from measure dimension");
  if (form == RevelationForm::point && !m.is_homogeneous())
    throw InvalidArgument("point revelation needs a homogeneous measure");
}

}  // namespace detail

/// Every martingale path with its probability (exact enumeration, n <= 14).
inline std::vector<MartingalePath> martingale_trace(const BooleanMeasure& m, const DiscreteFunctional& f,
                                                    RevelationForm form = RevelationForm::coordinate,
                                                    const std::vector<int>& ordering = {},
                                                    std::size_t max_paths = 5'000'000) {
  detail::require_martingale_inputs(m, f, form);
  const int n = m.n();
  std::vector<MartingalePath> paths;
  if (form == RevelationForm::coordinate) {
    const auto order = detail::resolve_ordering(n, ordering);
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n) + 1, std::vector<double>(m.size(), 0.0));
    auto b = a;
    double mean = 0.0;
    m.for_each_atom([&](BooleanMeasure::Mask x, double p) {
      const double v = f(m.configuration(x));
      mean += p * v;
      BooleanMeasure::Mask prefix = 0;
      for (int j = 0; j <= n; ++j) {
        a[static_cast<std::size_t>(j)][x & prefix] += p * v;
        b[static_cast<std::size_t>(j)][x & prefix] += p;
        if (j < n) prefix |= BooleanMeasure::Mask{1} << order[static_cast<std::size_t>(j)];
      }
    });
    m.for_each_atom([&](BooleanMeasure::Mask x, double p) {
      MartingalePath path;
      path.probability = p;
      path.revealed = order;
      BooleanMeasure::Mask prefix = 0;
      for (int j = 0; j <= n; ++j) {
        const auto key = x & prefix;
        path.values.push_back(j == 0 ? 0.0 : a[static_cast<std::size_t>(j)][key] / b[static_cast<std::size_t>(j)][key] - mean);
        if (j < n) prefix |= BooleanMeasure::Mask{1} << order[static_cast<std::size_t>(j)];
      }
      paths.push_back(std::move(path));
    });
    return paths;
  }

  const int k = m.homogeneous_rank();
  std::vector<double> a, b;
  detail::superset_sums(m, f, a, b);
  const double mean = a[0];
  MartingalePath current;
  current.values.push_back(0.0);
  current.probability = 1.0;
  std::function<void(BooleanMeasure::Mask, int)> walk = [&](BooleanMeasure::Mask s, int j) {
    if (j == k) {
      if (paths.size() >= max_paths) throw CapExceeded("martingale_trace path count", static_cast<long>(paths.size()) + 1, static_cast<long>(max_paths));
      paths.push_back(current);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (s >> x & 1U) continue;
      const auto t = s | (BooleanMeasure::Mask{1} << x);
      if (!(b[t] > 0.0)) continue;
      const double step = b[t] / (b[s] * (k - j));
      const double saved = current.probability;
      current.probability *= step;
      current.values.push_back(a[t] / b[t] - mean);
      current.revealed.push_back(x);
      walk(t, j + 1);
      current.revealed.pop_back();
      current.values.pop_back();
      current.probability = saved;
    }
  };
  walk(0, 0);
  return paths;
}

/// Largest |M_{j+1} - M_j| over every realizable step, without enumerating paths.
inline double max_martingale_increment(const BooleanMeasure& m, const DiscreteFunctional& f,
                                       RevelationForm form = RevelationForm::coordinate,
                                       const std::vector<int>& ordering = {}) {
  detail::require_martingale_inputs(m, f, form);
  double worst = 0.0;
  if (form == RevelationForm::coordinate) {
    for (const auto& path : martingale_trace(m, f, form, ordering))
      for (std::size_t j = 1; j < path.values.size(); ++j) worst = std::max(worst, std::abs(path.values[j] - path.values[j - 1]));
    return worst;
  }
  const int k = m.homogeneous_rank();
  std::vector<double> a, b;
  detail::superset_sums(m, f, a, b);
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (!(b[s] > 0.0) || std::popcount(s) >= k) continue;
    const double here = a[s] / b[s];
    for (int x = 0; x < m.n(); ++x) {
      if (s >> x & 1U) continue;
      const std::size_t t = s | (std::size_t{1} << x);
      if (b[t] > 0.0) worst = std::max(worst, std::abs(a[t] / b[t] - here));
    }
  }
  return worst;
}

/// Per-threshold verdict of a report against a list of bounds.
struct Comparison {
  std::vector<BoundSpec> bounds;
  std::vector<std::vector<double>> values;  // values[threshold][bound]
  std::vector<char> pass;                   // per threshold
  bool overall = true;
};

/// A threshold passes when every bound is at least the tail it controls:
/// the exact tail, or the upper confidence limit for Monte Carlo reports.
/// Two-sided families are compared with two-sided tails.
inline Comparison compare(const TailReport& report, const std::vector<BoundSpec>& bounds) {
  Comparison c;
  c.bounds = bounds;
  const std::size_t rows = report.grid.size();
  if (report.tail_hi.size() != rows || report.two_sided_hi.size() != rows)
    throw DimensionMismatch("report columns do not match its grid");
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row;
    bool ok = true;
    for (const auto& b : bounds) {
      const double value = eval_bound(b, report.grid[i]);
      const double tail = is_two_sided(b.family) ? report.two_sided_hi[i] : report.tail_hi[i];
      ok = ok && value >= tail;
      row.push_back(value);
    }
    c.values.push_back(std::move(row));
    c.pass.push_back(ok);
    c.overall = c.overall && ok;
  }
  return c;
}

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV: a, empirical, ci_lo, ci_hi, bound_<family>..., pass, then the two-sided columns.
inline std::string report_to_csv(const TailReport& r, const Comparison& c) {
  std::ostringstream out;
  out << "a,empirical,ci_lo,ci_hi";
  for (const auto& b : c.bounds) out << ",bound_" << bound_family_name(b.family);
  out << ",pass,empirical_two_sided,ci_lo_two_sided,ci_hi_two_sided\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out << format_double(r.grid[i]) << ',' << format_double(r.tail[i]) << ',' << format_double(r.tail_lo[i]) << ','
        << format_double(r.tail_hi[i]);
    for (double v : c.values[i]) out << ',' << format_double(v);
    out << ',' << (c.pass[i] ? "true" : "false") << ',' << format_double(r.two_sided[i]) << ','
        << format_double(r.two_sided_lo[i]) << ',' << format_double(r.two_sided_hi[i]) << '\n';
  }
  return out.str();
}

}  // namespace rayleigh
