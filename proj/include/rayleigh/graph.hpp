#pragma once

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rayleigh/error.hpp"

namespace rayleigh {

struct Edge {
  int u;
  int v;
  double weight = 1.0;
};

/// Undirected multigraph on vertices 0..vertex_count-1 with stable edge indices.
class Graph {
 public:
  Graph(int vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count < 1) throw InvalidArgument("a graph needs at least one vertex");
    incident_.resize(static_cast<std::size_t>(vertex_count));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      if (edge.u < 0 || edge.v < 0 || edge.u >= vertex_count || edge.v >= vertex_count)
        throw InvalidArgument("edge " + std::to_string(e) + " has an endpoint outside the vertex range");
      if (edge.u == edge.v) throw InvalidArgument("edge " + std::to_string(e) + " is a self-loop");
      if (!(edge.weight > 0.0) || !std::isfinite(edge.weight))
        throw InvalidArgument("edge " + std::to_string(e) + " needs a finite positive weight");
      incident_[static_cast<std::size_t>(edge.u)].push_back(static_cast<int>(e));
      incident_[static_cast<std::size_t>(edge.v)].push_back(static_cast<int>(e));
    }
  }

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<int>& incident(int v) const { return incident_.at(static_cast<std::size_t>(v)); }
  int other(int e, int v) const {
    const Edge& edge = this->edge(e);
    return edge.u == v ? edge.v : edge.u;
  }

  bool is_connected() const {
    std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e : incident(u)) {
        const int w = other(e, u);
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertex_count_;
  }

  static Graph path(int vertices) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < vertices; ++i) edges.push_back({i, i + 1, 1.0});
    return Graph(vertices, std::move(edges));
  }

  static Graph cycle(int vertices) {
    if (vertices < 3) throw InvalidArgument("a simple cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < vertices; ++i) edges.push_back({i, (i + 1) % vertices, 1.0});
    return Graph(vertices, std::move(edges));
  }

  /// Edges in lexicographic order (0,1), (0,2), ..., (1,2), ...
  static Graph complete(int vertices) {
    std::vector<Edge> edges;
    for (int i = 0; i < vertices; ++i)
      for (int j = i + 1; j < vertices; ++j) edges.push_back({i, j, 1.0});
    return Graph(vertices, std::move(edges));
  }

  /// Star with centre 0 and leaves 1..vertices-1.
  static Graph star(int vertices) {
    std::vector<Edge> edges;
    for (int i = 1; i < vertices; ++i) edges.push_back({0, i, 1.0});
    return Graph(vertices, std::move(edges));
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Parses `u v [weight]` lines (0-based vertices, weight defaults to 1).
/// Blank lines and text after '#' are ignored. The vertex count is one more
/// than the largest index, unless a `vertices N` line raises it.
inline Graph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  int vertices = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("graph line " + std::to_string(line_no) + ": " + why);
    };
    if (first == "vertices") {
      int count = 0;
      if (!(fields >> count) || count < 1) fail("expected a positive vertex count");
      vertices = std::max(vertices, count);
      continue;
    }
    Edge e{0, 0, 1.0};
    try {
      std::size_t used = 0;
      e.u = std::stoi(first, &used);
      if (used != first.size()) fail("bad vertex '" + first + "'");
    } catch (const std::logic_error&) {
      fail("bad vertex '" + first + "'");
    }
    if (!(fields >> e.v)) fail("expected two vertex indices");
    if (!(fields >> e.weight)) {
      if (!fields.eof()) fail("bad weight");
      e.weight = 1.0;
    }
    std::string extra;
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    if (e.u < 0 || e.v < 0) fail("negative vertex index");
    vertices = std::max({vertices, e.u + 1, e.v + 1});
    edges.push_back(e);
  }
  if (vertices == 0) throw ParseError("graph has no vertices");
  return Graph(vertices, std::move(edges));
}

inline Graph load_graph_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open graph file " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_graph(buffer.str());
}

}  // namespace rayleigh
