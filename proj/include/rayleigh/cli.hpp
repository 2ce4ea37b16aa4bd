#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rayleigh/bounds.hpp"
#include "rayleigh/conditioned_bernoulli.hpp"
#include "rayleigh/continuous.hpp"
#include "rayleigh/dependence.hpp"
#include "rayleigh/dpp.hpp"
#include "rayleigh/exclusion.hpp"
#include "rayleigh/functionals.hpp"
#include "rayleigh/graph.hpp"
#include "rayleigh/harness.hpp"
#include "rayleigh/io.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/parallel.hpp"
#include "rayleigh/spanning_tree.hpp"

namespace rayleigh::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr long kDefaultTrials = 10000;
inline constexpr long kDefaultPilotTrials = 1000;
inline constexpr std::uint64_t kPilotStreamOffset = std::uint64_t{1} << 40;

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<int> workers;
  std::optional<std::string> out;
};

/// Resolved run settings: command-line flags override config keys.
struct Settings {
  std::uint64_t seed = kDefaultSeed;
  long trials = kDefaultTrials;
  bool trials_given = false;
  int workers = 1;
  std::optional<std::string> out;
};

/// A random object named in a config: a discrete sampler over configurations,
/// a point-process sampler, and (when available under caps) its exact law.
struct Model {
  std::string type;
  int arity = 0;  // number of coordinates for discrete models
  std::optional<Graph> graph;
  std::function<Configuration(SeededRng&)> discrete;
  std::function<PointConfiguration(SeededRng&)> continuous;
  std::function<BooleanMeasure()> exact_law;
  std::optional<int> known_rank;  // homogeneous rank known without enumeration
  std::vector<std::string> warnings;

  bool is_continuous() const { return static_cast<bool>(continuous); }
};

namespace detail {

inline std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.string();
}

/// A source key holds either an inline object or a path to a file.
inline Json load_source(const Json& value, const std::filesystem::path& base, const std::string& what) {
  if (value.is_string()) return load_json_file(resolve_path(value.get<std::string>(), base));
  if (value.is_object()) return value;
  throw ParseError(what + " must be an object or a file path");
}

inline Graph load_graph(const Json& value, const std::filesystem::path& base) {
  if (value.is_string()) {
    const std::string path = resolve_path(value.get<std::string>(), base);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return graph_from_json(load_json_file(path));
    return load_graph_file(path);
  }
  return graph_from_json(value);
}

inline Configuration sample_from_measure(const std::vector<double>& cumulative, int n, SeededRng& rng) {
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  auto index = static_cast<std::size_t>(it - cumulative.begin());
  index = std::min(index, cumulative.size() - 1);
  while (index > 0 && cumulative[index] == cumulative[index - 1]) --index;  // skip zero-mass atoms
  return Configuration::from_mask(n, index);
}

inline std::function<Configuration(SeededRng&)> measure_sampler(const BooleanMeasure& m) {
  std::vector<double> cumulative(m.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) cumulative[i] = acc += m.masses()[i];
  const int n = m.n();
  return [cumulative = std::move(cumulative), n](SeededRng& rng) { return sample_from_measure(cumulative, n, rng); };
}

}  // namespace detail

inline Model parse_model(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ParseError("model must be a JSON object");
  const auto type = json_get<std::string>(require_field(j, "type", "model"), "model type");
  Model m;
  m.type = type;
  if (type == "spanning_tree") {
    require_keys(j, {"type", "graph"}, "spanning_tree model");
    Graph g = detail::load_graph(require_field(j, "graph", "spanning_tree model"), base);
    auto sampler = std::make_shared<SpanningTreeSampler>(g);
    m.arity = g.edge_count();
    m.known_rank = g.vertex_count() - 1;
    m.discrete = [sampler](SeededRng& rng) {
      return edge_set_configuration(sampler->graph(), (*sampler)(rng));
    };
    m.exact_law = [g] { return enumerate_spanning_trees(g); };
    m.graph = std::move(g);
  } else if (type == "conditioned_bernoulli") {
    require_keys(j, {"type", "lambda", "k"}, "conditioned_bernoulli model");
    auto lambda = json_get<std::vector<double>>(require_field(j, "lambda", "model"), "lambda");
    const int k = json_get<int>(require_field(j, "k", "model"), "k");
    auto sampler = std::make_shared<ConditionedBernoulliSampler>(lambda, k);
    m.arity = static_cast<int>(lambda.size());
    m.known_rank = k;
    m.discrete = [sampler](SeededRng& rng) { return (*sampler)(rng); };
    m.exact_law = [lambda, k] { return conditioned_bernoulli_law(lambda, k); };
  } else if (type == "exclusion") {
    require_keys(j, {"type", "spec"}, "exclusion model");
    const ExclusionSpec spec = exclusion_from_json(detail::load_source(require_field(j, "spec", "model"), base, "exclusion spec"));
    m.arity = spec.n;
    m.discrete = [spec](SeededRng& rng) { return simulate_exclusion(spec, rng); };
    m.exact_law = [spec] { return exclusion_exact_law(spec); };
    bool conserving = true;
    for (int i = 0; i < spec.n; ++i) conserving = conserving && spec.birth(i) == 0.0 && spec.death(i) == 0.0;
    if (conserving) m.known_rank = spec.initial.count();
  } else if (type == "dpp") {
    require_keys(j, {"type", "kernel"}, "dpp model");
    const auto kernel = std::make_shared<HermitianKernel>(
        kernel_from_json(detail::load_source(require_field(j, "kernel", "model"), base, "kernel")));
    m.arity = kernel->n();
    m.discrete = [kernel](SeededRng& rng) {
      return Configuration::from_indices(kernel->n(), sample_dpp_finite(*kernel, rng));
    };
    m.exact_law = [kernel] { return dpp_exact_pmf(*kernel); };
  } else if (type == "measure") {
    require_keys(j, {"type", "measure"}, "measure model");
    const BooleanMeasure measure = measure_from_json(detail::load_source(require_field(j, "measure", "model"), base, "measure"));
    m.arity = measure.n();
    m.discrete = detail::measure_sampler(measure);
    m.exact_law = [measure] { return measure; };
  } else if (type == "product") {
    require_keys(j, {"type", "p"}, "product model");
    auto p = json_get<std::vector<double>>(require_field(j, "p", "model"), "p");
    for (double q : p)
      if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("product probabilities must lie in [0,1]");
    if (p.empty()) throw InvalidArgument("product model needs at least one coordinate");
    m.arity = static_cast<int>(p.size());
    m.discrete = [p](SeededRng& rng) {
      Configuration x(static_cast<int>(p.size()));
      for (std::size_t i = 0; i < p.size(); ++i) x.set(static_cast<int>(i), rng.uniform() < p[i]);
      return x;
    };
    m.exact_law = [p] { return BooleanMeasure::product(p); };
  } else if (type == "ginibre") {
    require_keys(j, {"type", "k", "radius", "model"}, "ginibre model");
    GinibreSpec spec;
    spec.k = json_get<int>(require_field(j, "k", "model"), "k");
    if (j.contains("radius")) {
      spec.radius = j["radius"].is_string() && j["radius"].get<std::string>() == "inf"
                        ? std::numeric_limits<double>::infinity()
                        : json_get<double>(j["radius"], "radius");
    }
    if (j.contains("model")) {
      const auto name = json_get<std::string>(j["model"], "ginibre model");
      if (name == "dense") spec.model = GinibreModel::dense;
      else if (name != "hessenberg") throw ParseError("ginibre model must be 'hessenberg' or 'dense'");
    }
    spec.validate();
    m.warnings = spec.warnings();
    m.continuous = [spec](SeededRng& rng) { return sample_ginibre(spec, rng); };
  } else if (type == "power_series") {
    require_keys(j, {"type", "rho", "degree", "root_tolerance"}, "power_series model");
    PowerSeriesSpec spec;
    spec.rho = json_get<double>(require_field(j, "rho", "model"), "rho");
    if (j.contains("root_tolerance")) spec.root_tolerance = json_get<double>(j["root_tolerance"], "root_tolerance");
    spec.degree = j.contains("degree") ? json_get<int>(j["degree"], "degree")
                                       : default_truncation_degree(spec.rho, spec.root_tolerance);
    spec.validate();
    m.warnings = spec.warnings();
    m.continuous = [spec](SeededRng& rng) { return sample_power_series_zeros(spec, rng); };
  } else {
    throw ParseError("unknown model type '" + type + "'");
  }
  return m;
}

/// Functional config: {"name", "coeffs", "lipschitz", "radius", "metric", "constant", "graph"}.
struct FunctionalChoice {
  std::optional<DiscreteFunctional> discrete;
  std::optional<PointFunctional> point;
};

inline FunctionalChoice parse_functional(const Json& j, const Model& model, const std::filesystem::path& base) {
  require_keys(j, {"name", "coeffs", "lipschitz", "radius", "metric", "constant", "graph"}, "functional");
  const auto name = json_get<std::string>(require_field(j, "name", "functional"), "functional name");
  FunctionalChoice out;
  auto graph = [&]() -> Graph {
    if (j.contains("graph")) return detail::load_graph(j["graph"], base);
    if (model.graph) return *model.graph;
    if (model.arity >= 3) return Graph::cycle(model.arity);  // edge coordinates of the n-cycle
    throw InvalidArgument(name + " needs a graph; add \"graph\" to the functional");
  };
  if (name == "half_odd_degree") out.discrete = half_odd_degree(graph());
  else if (name == "leaf_count") out.discrete = leaf_count(graph());
  else if (name == "indicator_sum") {
    std::vector<int> coeffs = j.contains("coeffs") ? json_get<std::vector<int>>(j["coeffs"], "coeffs")
                                                   : std::vector<int>(static_cast<std::size_t>(model.arity), 1);
    out.discrete = indicator_sum(std::move(coeffs));
  } else if (name == "rank") out.discrete = rank_functional(model.arity);
  else if (name == "lonely_points") {
    const double radius = j.contains("radius") ? json_get<double>(j["radius"], "radius") : 1.0;
    LonelyMetric metric = LonelyMetric::euclidean;
    if (j.contains("metric")) {
      const auto mname = json_get<std::string>(j["metric"], "metric");
      if (mname == "hyperbolic") metric = LonelyMetric::hyperbolic;
      else if (mname != "euclidean") throw ParseError("metric must be 'euclidean' or 'hyperbolic'");
    }
    std::optional<double> constant;
    if (j.contains("constant")) constant = json_get<double>(j["constant"], "constant");
    out.point = lonely_points(radius, metric, constant);
  } else if (name == "point_count") out.point = point_count();
  else throw ParseError("unknown functional '" + name + "'");

  if (j.contains("lipschitz")) {
    const double c = json_get<double>(j["lipschitz"], "lipschitz");
    if (!(c > 0.0)) throw InvalidArgument("declared Lipschitz constant must be positive");
    if (out.discrete) out.discrete->lipschitz = c;
    if (out.point) out.point->lipschitz = c;
  }
  if (out.discrete && !model.is_continuous() && out.discrete->arity != model.arity)
    throw DimensionMismatch(name + " has " + std::to_string(out.discrete->arity) + " coordinates but the model has " +
                            std::to_string(model.arity));
  if (out.discrete && model.is_continuous()) throw InvalidArgument(name + " applies to discrete models only");
  if (out.point && !model.is_continuous()) throw InvalidArgument(name + " applies to point-process models only");
  return out;
}

namespace detail {

inline Settings resolve_settings(const Json& config, const Options& opt) {
  Settings s;
  if (config.contains("seed")) s.seed = json_get<std::uint64_t>(config["seed"], "seed");
  if (config.contains("trials")) {
    s.trials = json_get<long>(config["trials"], "trials");
    s.trials_given = true;
  }
  if (config.contains("workers")) s.workers = json_get<int>(config["workers"], "workers");
  if (config.contains("out")) s.out = json_get<std::string>(config["out"], "out");
  if (opt.seed) s.seed = *opt.seed;
  if (opt.trials) {
    s.trials = *opt.trials;
    s.trials_given = true;
  }
  if (opt.workers) s.workers = *opt.workers;
  if (opt.out) s.out = *opt.out;
  if (s.workers < 1) throw InvalidArgument("workers must be at least 1");
  if (s.trials < 1) throw InvalidArgument("trials must be positive");
  return s;
}

inline void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + *path);
  file << text;
}

}  // namespace detail

inline int cmd_sample(const Json& config, const Options& opt, const std::filesystem::path& base, std::ostream& out,
                      std::ostream& err) {
  require_keys(config, {"model", "trials", "seed", "workers", "out"}, "sample config");
  const Settings s = detail::resolve_settings(config, opt);
  const Model model = parse_model(require_field(config, "model", "sample config"), base);
  for (const auto& w : model.warnings) err << "warning: " << w << '\n';
  std::vector<std::string> rows(static_cast<std::size_t>(s.trials));
  run_trials(s.trials, s.workers, [&](long t) {
    SeededRng rng(s.seed, static_cast<std::uint64_t>(t));
    auto& row = rows[static_cast<std::size_t>(t)];
    if (model.is_continuous()) {
      std::string line = "[";
      const auto x = model.continuous(rng);
      for (std::size_t i = 0; i < x.points.size(); ++i) {
        if (i) line += ',';
        line += '[' + format_double(x.points[i].real()) + ',' + format_double(x.points[i].imag()) + ']';
      }
      row = line + ']';
    } else {
      row = model.discrete(rng).to_string();
    }
  });
  std::string text = "# rayleigh sample model=" + model.type + " seed=" + std::to_string(s.seed) +
                     " trials=" + std::to_string(s.trials) + '\n';
  for (const auto& r : rows) text += r + '\n';
  detail::write_output(s.out, text, out);
  return kExitPass;
}

inline int cmd_verify(const Json& config, const Options& opt, const std::filesystem::path& base, std::ostream& out,
                      std::ostream& err) {
  require_keys(config, {"model", "against", "checks", "functional", "lipschitz_mode", "lipschitz_trials", "grid_points",
                        "tolerance", "cap", "seed", "workers", "out", "trials"},
               "verify config");
  const Settings s = detail::resolve_settings(config, opt);
  const Model model = parse_model(require_field(config, "model", "verify config"), base);
  for (const auto& w : model.warnings) err << "warning: " << w << '\n';
  const auto checks = json_get<std::vector<std::string>>(require_field(config, "checks", "verify config"), "checks");
  if (checks.empty()) throw InvalidArgument("checks list is empty");
  const int cap = config.contains("cap") ? json_get<int>(config["cap"], "cap") : kDefaultExhaustiveCap;

  std::optional<BooleanMeasure> law;
  auto measure = [&]() -> const BooleanMeasure& {
    if (!law) {
      if (!model.exact_law) throw InvalidArgument("model type '" + model.type + "' has no exact law to check");
      law = model.exact_law();
    }
    return *law;
  };
  auto second = [&]() {
    const Model other = parse_model(require_field(config, "against", "verify config"), base);
    if (!other.exact_law) throw InvalidArgument("'against' model has no exact law");
    return other.exact_law();
  };

  Json results = Json::array();
  bool all = true;
  for (const auto& name : checks) {
    CheckVerdict v;
    if (name == "scp") v = check_scp(measure(), cap);
    else if (name == "negative_cylinder") v = check_negative_cylinder(measure(), cap);
    else if (name == "rank_covering") v = check_rank_covering(measure(), cap);
    else if (name == "real_rooted")
      v = check_univariate_real_rooted(measure(), config.contains("tolerance") ? json_get<double>(config["tolerance"], "tolerance") : 1e-6);
    else if (name == "rayleigh") {
      SeededRng rng(s.seed);
      const int points = config.contains("grid_points") ? json_get<int>(config["grid_points"], "grid_points") : 200;
      v = rayleigh_refute(measure(), default_rayleigh_grid(measure().n(), rng, points));
    } else if (name == "domination") v = check_domination(measure(), second());
    else if (name == "covering") v = check_covering(measure(), second());
    else if (name == "lipschitz") {
      const auto f = parse_functional(require_field(config, "functional", "verify config"), model, base);
      if (!f.discrete) throw InvalidArgument("Lipschitz verification applies to discrete functionals");
      LipschitzMode mode = LipschitzMode::exhaustive;
      if (config.contains("lipschitz_mode")) {
        const auto mname = json_get<std::string>(config["lipschitz_mode"], "lipschitz_mode");
        if (mname == "randomized") mode = LipschitzMode::randomized;
        else if (mname != "exhaustive") throw ParseError("lipschitz_mode must be 'exhaustive' or 'randomized'");
      }
      const long trials = config.contains("lipschitz_trials") ? json_get<long>(config["lipschitz_trials"], "lipschitz_trials") : 10000;
      v = verify_lipschitz(*f.discrete, mode, trials, s.seed);
    } else {
      throw ParseError("unknown check '" + name + "'");
    }
    Json entry = verdict_to_json(v);
    entry["check"] = name;
    results.push_back(std::move(entry));
    all = all && v.holds;
  }
  Json report{{"model", model.type}, {"seed", s.seed}, {"checks", results}, {"holds", all}};
  detail::write_output(s.out, report.dump(2) + '\n', out);
  return all ? kExitPass : kExitRefuted;
}

namespace detail {

inline BoundSpec parse_bound(const Json& j) {
  BoundSpec b;
  if (j.is_string()) {
    b.family = parse_bound_family(j.get<std::string>());
    return b;
  }
  require_keys(j, {"family", "k", "n", "mu", "vertices"}, "bound");
  b.family = parse_bound_family(json_get<std::string>(require_field(j, "family", "bound"), "bound family"));
  if (j.contains("k")) b.k = json_get<double>(j["k"], "k");
  if (j.contains("n")) b.n = json_get<double>(j["n"], "n");
  if (j.contains("mu")) b.mu = json_get<double>(j["mu"], "mu");
  if (j.contains("vertices")) b.vertices = json_get<double>(j["vertices"], "vertices");
  return b;
}

/// Fills unspecified size parameters from what is known about the model.
inline void fill_bound(BoundSpec& b, const Model& model, std::optional<int> rank, std::optional<double> mu) {
  switch (b.family) {
    case BoundFamily::homogeneous_scp:
    case BoundFamily::homogeneous_two_sided:
      if (!b.k && rank) b.k = std::max(1, *rank);
      break;
    case BoundFamily::k_to_n:
    case BoundFamily::azuma:
    case BoundFamily::mcdiarmid:
      if (!b.n && model.arity > 0) b.n = model.arity;
      break;
    case BoundFamily::general_one_sided:
    case BoundFamily::general_two_sided:
    case BoundFamily::poisson_hoeffding:
      if (!b.mu && mu) b.mu = *mu;
      break;
    case BoundFamily::spanning_tree:
      if (!b.vertices && model.graph) b.vertices = model.graph->vertex_count();
      break;
  }
}

inline std::vector<double> parse_grid(const Json& j) {
  if (j.is_array()) return json_get<std::vector<double>>(j, "grid");
  require_keys(j, {"points", "min", "max"}, "grid");
  const int points = j.contains("points") ? json_get<int>(j["points"], "grid points") : 20;
  return linear_grid(json_get<double>(require_field(j, "min", "grid"), "grid min"),
                     json_get<double>(require_field(j, "max", "grid"), "grid max"), points);
}

inline std::pair<std::string, std::string> output_paths(const std::string& out) {
  if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") return {out, out.substr(0, out.size() - 4) + ".json"};
  if (out.size() > 5 && out.substr(out.size() - 5) == ".json") return {out.substr(0, out.size() - 5) + ".csv", out};
  return {out + ".csv", out + ".json"};
}

}  // namespace detail

inline int cmd_tail(const Json& config, const Options& opt, const std::filesystem::path& base, std::ostream& out,
                    std::ostream& err) {
  require_keys(config, {"model", "functional", "bounds", "grid", "grid_points", "mode", "trials", "pilot_trials", "seed",
                        "workers", "out"},
               "tail config");
  const Settings s = detail::resolve_settings(config, opt);
  if (s.trials_given && s.trials < kMinimumTrials)
    throw InvalidArgument("trials must be at least " + std::to_string(kMinimumTrials));
  const Model model = parse_model(require_field(config, "model", "tail config"), base);
  for (const auto& w : model.warnings) err << "warning: " << w << '\n';
  const FunctionalChoice f = parse_functional(require_field(config, "functional", "tail config"), model, base);
  std::vector<BoundSpec> bounds;
  for (const auto& b : require_field(config, "bounds", "tail config")) bounds.push_back(detail::parse_bound(b));
  if (bounds.empty()) throw InvalidArgument("bounds list is empty");
  const std::string mode = config.contains("mode") ? json_get<std::string>(config["mode"], "mode") : "auto";
  if (mode != "auto" && mode != "exact" && mode != "monte_carlo") throw ParseError("mode must be auto, exact or monte_carlo");
  const long pilot_trials = config.contains("pilot_trials") ? json_get<long>(config["pilot_trials"], "pilot_trials") : kDefaultPilotTrials;
  if (pilot_trials < 2) throw InvalidArgument("pilot_trials must be at least 2");
  const int grid_points = config.contains("grid_points") ? json_get<int>(config["grid_points"], "grid_points") : 20;

  // Exact mode needs an enumerable law under the caps.
  std::optional<BooleanMeasure> law;
  if (mode != "monte_carlo" && model.exact_law) {
    try {
      law = model.exact_law();
    } catch (const CapExceeded& e) {
      if (mode == "exact") throw;
      err << "note: " << e.what() << "; using Monte Carlo\n";
    }
  }
  if (mode == "exact" && !law) throw InvalidArgument("model type '" + model.type + "' has no exact law");

  TailReport report;
  std::optional<int> rank = model.known_rank;
  std::optional<double> mu;
  if (law) {
    const auto& g = *f.discrete;
    if (!rank && law->is_homogeneous()) rank = law->homogeneous_rank();
    mu = mean_rank(*law);
    std::vector<double> grid;
    if (config.contains("grid")) {
      grid = detail::parse_grid(config["grid"]);
    } else {
      std::vector<std::pair<double, double>> values;
      law->for_each_atom([&](BooleanMeasure::Mask x, double p) { values.emplace_back(p, g(law->configuration(x)) / g.lipschitz); });
      double mean = 0.0, second = 0.0;
      for (auto [p, v] : values) {
        mean += p * v;
        second += p * v * v;
      }
      double reach = 0.0;
      for (auto [p, v] : values) reach = std::max(reach, std::abs(v - mean));
      grid = default_grid(std::sqrt(std::max(0.0, second - mean * mean)), std::max(reach, 1e-9), grid_points);
    }
    report = exact_tail(*law, g, grid);
  } else {
    if (s.trials < kMinimumTrials) throw InvalidArgument("trials must be at least " + std::to_string(kMinimumTrials));
    MonteCarloOptions pilot{pilot_trials, s.seed, s.workers, kPilotStreamOffset};
    MonteCarloOptions main{s.trials, s.seed, s.workers, 0};
    std::vector<double> grid;
    // Default grid from a pilot run: 0.1 sd up to the largest pilot deviation.
    auto pilot_grid = [&](const auto& sampler, const auto& eval) {
      auto values = rayleigh::detail::draw_values(sampler, eval, pilot);
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double ss = 0.0, reach = 0.0;
      for (double v : values) {
        ss += (v - mean) * (v - mean);
        reach = std::max(reach, std::abs(v - mean));
      }
      const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
      return default_grid(sd, std::max(reach, 1e-9), grid_points);
    };
    if (model.is_continuous()) {
      const auto& g = *f.point;
      const auto count = estimate_mean(model.continuous, [](const PointConfiguration& x) { return static_cast<double>(x.size()); }, pilot);
      mu = count.mean;
      if (config.contains("grid")) grid = detail::parse_grid(config["grid"]);
      else grid = pilot_grid(model.continuous, [&](const PointConfiguration& x) { return g(x) / g.lipschitz; });
      report = estimate_tail(model.continuous, [&](const PointConfiguration& x) { return g(x); }, g.lipschitz, grid, main, g.name);
    } else {
      const auto& g = *f.discrete;
      const auto count = estimate_mean(model.discrete, [](const Configuration& x) { return static_cast<double>(x.count()); }, pilot);
      mu = count.mean;
      if (config.contains("grid")) grid = detail::parse_grid(config["grid"]);
      else grid = pilot_grid(model.discrete, [&](const Configuration& x) { return g(x) / g.lipschitz; });
      report = estimate_tail(model.discrete, [&](const Configuration& x) { return g(x); }, g.lipschitz, grid, main, g.name);
    }
  }
  report.seed = s.seed;
  for (auto& b : bounds) detail::fill_bound(b, model, rank, mu);
  const Comparison c = compare(report, bounds);
  const std::string csv = report_to_csv(report, c);
  if (s.out) {
    const auto [csv_path, json_path] = detail::output_paths(*s.out);
    detail::write_output(csv_path, csv, out);
    detail::write_output(json_path, report_to_json(report, c).dump(2) + '\n', out);
  } else {
    out << csv;
  }
  return c.overall ? kExitPass : kExitRefuted;
}

/// Entry point: rayleigh <sample|verify|tail> --config PATH [--seed U64]
/// [--trials N] [--workers N] [--out PATH].
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Sampling, dependence checks and concentration experiments for strong Rayleigh measures", "rayleigh"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  long trials = 0;
  int workers = 0;
  std::string out_path;
  for (const char* name : {"sample", "verify", "tail"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "sample"   ? "Draw samples from a model"
                                         : std::string(name) == "verify" ? "Run dependence or Lipschitz checks"
                                                                         : "Compare tail probabilities with bounds");
    sub->add_option("--config", opt.config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--trials", trials, "Number of samples or Monte Carlo trials");
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "Output path");
    sub->callback([&opt, sub, name] {
      opt.command = name;
      (void)sub;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) opt.seed = seed;
    if (sub->count("--trials")) opt.trials = trials;
    if (sub->count("--workers")) opt.workers = workers;
    if (sub->count("--out")) opt.out = out_path;
  }
  try {
    const Json config = load_json_file(opt.config_path);
    if (!config.is_object()) throw ParseError("config must be a JSON object");
    const auto base = std::filesystem::absolute(opt.config_path).parent_path();
    if (opt.command == "sample") return cmd_sample(config, opt, base, out, err);
    if (opt.command == "verify") return cmd_verify(config, opt, base, out, err);
    return cmd_tail(config, opt, base, out, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what()
        << " (exhaustive operations are capped to keep runs short; use a smaller instance, or raise \"cap\" in a verify config)\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace rayleigh::cli
