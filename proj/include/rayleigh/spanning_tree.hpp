#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "rayleigh/error.hpp"
#include "rayleigh/graph.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr int kSpanningTreeEnumerationCap = 20;

/// Reusable sampler for the weighted spanning-tree measure, P(T) ∝ prod_{e in T} w(e).
///
/// Wilson's algorithm: loop-erased random walks with weight-proportional
/// steps, rooted at vertex 0.
class SpanningTreeSampler {
 public:
  explicit SpanningTreeSampler(Graph g) : graph_(std::move(g)) {
    if (!graph_.is_connected()) throw InvalidArgument("spanning trees need a connected graph");
    const auto n = static_cast<std::size_t>(graph_.vertex_count());
    cumulative_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int e : graph_.incident(static_cast<int>(v))) {
        acc += graph_.edge(e).weight;
        cumulative_[v].push_back(acc);
      }
    }
  }

  const Graph& graph() const noexcept { return graph_; }

  /// Sorted edge indices of one tree.
  std::vector<int> operator()(SeededRng& rng) const {
    const auto n = static_cast<std::size_t>(graph_.vertex_count());
    std::vector<char> in_tree(n, 0);
    std::vector<int> next_edge(n, -1);
    in_tree[0] = 1;
    for (std::size_t start = 1; start < n; ++start) {
      int u = static_cast<int>(start);
      while (!in_tree[static_cast<std::size_t>(u)]) {
        const int e = step(u, rng);
        next_edge[static_cast<std::size_t>(u)] = e;
        u = graph_.other(e, u);
      }
      u = static_cast<int>(start);
      while (!in_tree[static_cast<std::size_t>(u)]) {
        in_tree[static_cast<std::size_t>(u)] = 1;
        u = graph_.other(next_edge[static_cast<std::size_t>(u)], u);
      }
    }
    std::vector<int> tree(next_edge.begin() + 1, next_edge.end());
    std::sort(tree.begin(), tree.end());
    return tree;
  }

 private:
  int step(int u, SeededRng& rng) const {
    const auto& cum = cumulative_[static_cast<std::size_t>(u)];
    const double target = rng.uniform() * cum.back();
    const auto idx = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    return graph_.incident(u)[std::min(idx, cum.size() - 1)];
  }

  Graph graph_;
  std::vector<std::vector<double>> cumulative_;
};

inline std::vector<int> sample_spanning_tree(const Graph& g, SeededRng& rng) {
  return SpanningTreeSampler(g)(rng);
}

/// Edge-indicator configuration of an edge set.
inline Configuration edge_set_configuration(const Graph& g, const std::vector<int>& edges) {
  return Configuration::from_indices(g.edge_count(), edges);
}

/// True when the edge set is a spanning tree of g.
inline bool is_spanning_tree(const Graph& g, const std::vector<int>& edges) {
  if (static_cast<int>(edges.size()) != g.vertex_count() - 1) return false;
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int e : edges) {
    if (e < 0 || e >= g.edge_count()) return false;
    const int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

/// Exact weighted spanning-tree measure on edge indicators (edge count <= 20).
inline BooleanMeasure enumerate_spanning_trees(const Graph& g) {
  const int m = g.edge_count();
  if (m > kSpanningTreeEnumerationCap) throw CapExceeded("enumerate_spanning_trees edge count", m, kSpanningTreeEnumerationCap);
  if (!g.is_connected()) throw InvalidArgument("spanning trees need a connected graph");
  const int need = g.vertex_count() - 1;
  if (m == 0) throw InvalidArgument("a single vertex has only the empty tree, which has no edge coordinates");
  std::vector<double> weights(std::size_t{1} << m, 0.0);
  std::vector<int> edges;
  for (std::size_t mask = 0; mask < weights.size(); ++mask) {
    if (std::popcount(mask) != need) continue;
    edges.clear();
    double w = 1.0;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1U) {
        edges.push_back(e);
        w *= g.edge(e).weight;
      }
    if (is_spanning_tree(g, edges)) weights[mask] = w;
  }
  return BooleanMeasure::from_weights(m, std::move(weights));
}

}  // namespace rayleigh
