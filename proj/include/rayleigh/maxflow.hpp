#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace rayleigh {

/// Dinic's algorithm on integer capacities.
///
/// Capacities are int64; callers scale real masses to a common integer
/// total so the flow value is exact.
class MaxFlow {
 public:
  using Capacity = std::int64_t;
  static constexpr Capacity kInfinite = std::numeric_limits<Capacity>::max() / 4;

  explicit MaxFlow(int nodes) : adjacency_(static_cast<std::size_t>(nodes)) {}

  int node_count() const noexcept { return static_cast<int>(adjacency_.size()); }

  /// Adds a directed arc and returns its id.
  int add_arc(int from, int to, Capacity capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, 0});
    adjacency_[static_cast<std::size_t>(from)].push_back(id);
    arcs_.push_back({from, 0, 0});
    adjacency_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  Capacity solve(int source, int sink) {
    Capacity total = 0;
    while (build_levels(source, sink)) {
      next_.assign(adjacency_.size(), 0);
      while (Capacity pushed = augment(source, sink, kInfinite)) total += pushed;
    }
    return total;
  }

  Capacity flow(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }

  /// Nodes reachable from the source in the residual graph after solve().
  std::vector<bool> residual_reachable(int source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::vector<int> stack{source};
    seen[static_cast<std::size_t>(source)] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adjacency_[static_cast<std::size_t>(u)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.capacity - a.flow > 0 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    Capacity capacity;
    Capacity flow;
  };

  bool build_levels(int source, int sink) {
    level_.assign(adjacency_.size(), -1);
    std::queue<int> queue;
    level_[static_cast<std::size_t>(source)] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int id : adjacency_[static_cast<std::size_t>(u)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.capacity - a.flow > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  Capacity augment(int u, int sink, Capacity limit) {
    if (u == sink) return limit;
    auto& cursor = next_[static_cast<std::size_t>(u)];
    const auto& out = adjacency_[static_cast<std::size_t>(u)];
    for (; cursor < out.size(); ++cursor) {
      const int id = out[cursor];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.capacity - a.flow <= 0 ||
          level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      if (Capacity pushed = augment(a.to, sink, std::min(limit, a.capacity - a.flow))) {
        a.flow += pushed;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adjacency_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace rayleigh
