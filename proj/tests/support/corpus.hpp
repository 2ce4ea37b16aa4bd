#pragma once

// Small strong Rayleigh measures shared by the unit tests and the acceptance
// binary. Every family here is strong Rayleigh by construction: products,
// conditioned products and their projections, spanning-tree measures,
// determinantal measures and their rank slices, and exclusion laws started
// from a deterministic state.

#include <set>
#include <string>
#include <vector>

#include "rayleigh/rayleigh.hpp"

namespace rayleigh::testing {

struct CorpusMeasure {
  std::string name;
  BooleanMeasure measure;
  Graph graph;  // edge structure that graph functionals are evaluated on
};

/// Graph whose edges index the coordinates of a non-graph measure: the n-cycle
/// for n >= 3, otherwise a path with n edges.
inline Graph coordinate_graph(int n) { return n >= 3 ? Graph::cycle(n) : Graph::path(n + 1); }

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Connected graphs with at most 8 edges, some weighted.
inline std::vector<NamedGraph> small_graphs() {
  std::vector<NamedGraph> out;
  out.push_back({"P3", Graph::path(3)});
  out.push_back({"P5", Graph::path(5)});
  out.push_back({"triangle", Graph::cycle(3)});
  out.push_back({"triangle_w211", Graph(3, {{0, 1, 2.0}, {1, 2, 1.0}, {0, 2, 1.0}})});
  out.push_back({"C4", Graph::cycle(4)});
  out.push_back({"C5_weighted", Graph(5, {{0, 1, 1.0}, {1, 2, 2.5}, {2, 3, 0.5}, {3, 4, 1.0}, {0, 4, 3.0}})});
  out.push_back({"star4", Graph::star(4)});
  out.push_back({"diamond", Graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1}})});
  out.push_back({"K4", Graph::complete(4)});
  out.push_back({"K4_weighted", Graph(4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 0.5}, {1, 2, 1.5}, {1, 3, 3.0}, {2, 3, 1.0}})});
  out.push_back({"bowtie", Graph(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}, {3, 4, 1}, {2, 4, 1}})});
  out.push_back({"K23", Graph(5, {{0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 2, 1}, {1, 3, 1}, {1, 4, 1}})});
  out.push_back({"C4_pendants", Graph(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}, {2, 5, 1}})});
  out.push_back({"wheel4", Graph(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}})});
  out.push_back({"K4_tail", Graph(6, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 2}, {4, 5, 1}})});
  return out;
}

inline std::vector<double> uniform_vector(SeededRng& rng, int n, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline std::vector<CorpusMeasure> homogeneous_corpus() {
  std::vector<CorpusMeasure> out;
  for (auto& [name, g] : small_graphs()) out.push_back({"tree_" + name, enumerate_spanning_trees(g), g});

  SeededRng rng(20240611);
  for (int n = 3; n <= 10; ++n) {
    for (int k : std::set<int>{1, n / 2, n - 1}) {
      const auto lambda = uniform_vector(rng, n, 0.2, 3.0);
      out.push_back({"cb_n" + std::to_string(n) + "_k" + std::to_string(k), conditioned_bernoulli_law(lambda, k),
                     coordinate_graph(n)});
    }
  }

  for (int n = 2; n <= 8; ++n) {
    std::vector<double> spectrum(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) spectrum[static_cast<std::size_t>(i)] = 1.0;
    out.push_back({"projection_dpp_n" + std::to_string(n), dpp_exact_pmf(HermitianKernel::random(spectrum, rng)),
                   coordinate_graph(n)});
    const auto mixed = dpp_exact_pmf(HermitianKernel::random(uniform_vector(rng, n, 0.05, 0.95), rng));
    const auto ranks = rank_distribution(mixed);
    for (int k = 1; k < n; ++k) {
      if (ranks[static_cast<std::size_t>(k)] < 1e-6) continue;
      if (k != 1 && k != n / 2) continue;
      out.push_back({"dpp_rank_n" + std::to_string(n) + "_k" + std::to_string(k), condition_on_rank(mixed, k),
                     coordinate_graph(n)});
    }
  }

  for (int n = 3; n <= 6; ++n) {
    Configuration start(n);
    for (int i = 0; i < n / 2; ++i) start.set(i, true);
    const auto spec = ExclusionSpec::cycle(n, 1.0, start, 0.5);
    out.push_back({"exclusion_cycle_n" + std::to_string(n), exclusion_exact_law(spec), coordinate_graph(n)});
  }
  return out;
}

inline std::vector<CorpusMeasure> general_corpus() {
  std::vector<CorpusMeasure> out;
  SeededRng rng(777);
  for (int n = 1; n <= 8; ++n)
    out.push_back({"product_n" + std::to_string(n), BooleanMeasure::product(uniform_vector(rng, n, 0.05, 0.95)),
                   coordinate_graph(n)});
  out.push_back({"product_degenerate", BooleanMeasure::product(std::vector<double>{0.0, 1.0, 0.5}), coordinate_graph(3)});

  for (int n = 4; n <= 10; n += 2) {
    const auto lambda = uniform_vector(rng, n, 0.2, 3.0);
    const auto law = conditioned_bernoulli_law(lambda, n / 2);
    std::vector<int> left;
    for (int i = 0; i < n - 2; ++i) left.push_back(i);
    out.push_back({"cb_projection_n" + std::to_string(n), project(law, left), coordinate_graph(n - 2)});
  }

  for (int n = 2; n <= 8; ++n)
    out.push_back({"dpp_mixed_n" + std::to_string(n),
                   dpp_exact_pmf(HermitianKernel::random(uniform_vector(rng, n, 0.0, 1.0), rng)), coordinate_graph(n)});

  for (int n = 3; n <= 6; ++n) {
    Configuration start(n);
    start.set(0, true);
    ExclusionSpec spec = ExclusionSpec::cycle(n, 1.0, start, 0.7);
    spec.birth_rates.assign(static_cast<std::size_t>(n), 0.3);
    spec.death_rates.assign(static_cast<std::size_t>(n), 0.6);
    out.push_back({"exclusion_birth_death_n" + std::to_string(n), exclusion_exact_law(spec), coordinate_graph(n)});
  }
  {
    ExclusionSpec spec;
    spec.n = 4;
    spec.swap_rates = {{0, 1.0, 0.5, 2.0}, {1.0, 0, 1.5, 0.2}, {0.5, 1.5, 0, 1.0}, {2.0, 0.2, 1.0, 0}};
    spec.birth_rates = {0.5, 0.0, 0.2, 0.0};
    spec.death_rates = {0.0, 0.4, 0.0, 1.0};
    spec.initial = Configuration::from_string("1010");
    spec.horizon = 0.8;
    out.push_back({"exclusion_complete_n4", exclusion_exact_law(spec), coordinate_graph(4)});
  }
  return out;
}

inline std::vector<CorpusMeasure> full_corpus() {
  auto all = homogeneous_corpus();
  for (auto& m : general_corpus()) all.push_back(std::move(m));
  return all;
}

/// Lipschitz-1 functionals on the coordinates of a corpus measure.
inline std::vector<DiscreteFunctional> corpus_functionals(const CorpusMeasure& c) {
  const int n = c.measure.n();
  std::vector<int> split(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) split[static_cast<std::size_t>(i)] = 2 * i < n ? 1 : -1;
  std::vector<int> alternate(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) alternate[static_cast<std::size_t>(i)] = i % 2 == 0 ? 1 : 0;
  return {half_odd_degree(c.graph), rescaled(leaf_count(c.graph)), indicator_sum(split), indicator_sum(alternate),
          rank_functional(n)};
}

}  // namespace rayleigh::testing
