#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minpath/color_set.hpp"

namespace minpath {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using Edge = std::pair<int, int>;

/// Vertex-colored graph with a combinatorial embedding. `rotation[v]` lists the
/// edge ids incident to v in clockwise order. Graphs built for the non-planar
/// reductions carry `embedded == false` and an empty rotation.
struct ColoredPlanarGraph {
  int num_colors = 0;
  std::vector<ColorSet> colors;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> rotation;
  std::vector<double> color_weights;  // empty means 1.0 for every color
  bool embedded = true;

  int num_vertices() const { return static_cast<int>(colors.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  std::vector<double> weights() const {
    if (!color_weights.empty()) return color_weights;
    return std::vector<double>(static_cast<std::size_t>(num_colors), 1.0);
  }

  bool is_white(int v) const { return colors[static_cast<std::size_t>(v)].empty(); }

  friend bool operator==(const ColoredPlanarGraph&, const ColoredPlanarGraph&) = default;
};

/// One violated invariant: a short machine-readable kind, the offending id
/// (vertex, edge, color or pair index; -1 when not applicable) and a message.
struct Violation {
  std::string kind;
  int id = -1;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, int id, std::string message) {
    violations.push_back({std::move(kind), id, std::move(message)});
  }
  bool has(std::string_view kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == kind; });
  }
  bool has(std::string_view kind, int id) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == kind && v.id == id; });
  }
};

struct TerminalPair {
  int s = 0;
  int t = 0;
  double prize = kInfinity;  // kInfinity: the pair must be connected

  friend bool operator==(const TerminalPair&, const TerminalPair&) = default;
};

struct Instance {
  ColoredPlanarGraph graph;
  std::vector<TerminalPair> terminals;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Neighbour lists sorted by vertex id. Ignores out-of-range endpoints so it is
/// safe to call on unvalidated input.
inline std::vector<std::vector<int>> adjacency(const ColoredPlanarGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()));
  const int n = g.num_vertices();
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) continue;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

/// V(C): vertices whose color set meets C.
inline std::vector<int> host_vertices(const ColoredPlanarGraph& g, const ColorSet& c) {
  std::vector<int> out;
  if (c.empty()) return out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.colors[static_cast<std::size_t>(v)].intersects(c)) out.push_back(v);
  }
  return out;
}

/// BFS restricted to vertices accepted by `allowed`. Returns the vertex path
/// s..t (lowest-id-first tie breaking) or an empty vector.
template <typename Allowed>
std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj, int s, int t,
                          Allowed&& allowed) {
  if (!allowed(s) || !allowed(t)) return {};
  std::vector<int> parent(adj.size(), -2);
  std::queue<int> queue;
  parent[static_cast<std::size_t>(s)] = -1;
  queue.push(s);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    if (u == t) break;
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (parent[static_cast<std::size_t>(w)] != -2 || !allowed(w)) continue;
      parent[static_cast<std::size_t>(w)] = u;
      queue.push(w);
    }
  }
  if (parent[static_cast<std::size_t>(t)] == -2) return {};
  std::vector<int> path;
  for (int v = t; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// True iff every color's host vertices induce a connected subgraph.
inline bool is_color_connected(const ColoredPlanarGraph& g, std::vector<Color>* broken = nullptr) {
  const auto adj = adjacency(g);
  const int n = g.num_vertices();
  bool ok = true;
  std::vector<int> seen(static_cast<std::size_t>(n), -1);
  for (Color c = 0; c < g.num_colors; ++c) {
    int start = -1;
    int hosts = 0;
    for (int v = 0; v < n; ++v) {
      if (g.colors[static_cast<std::size_t>(v)].contains(c)) {
        if (start < 0) start = v;
        ++hosts;
      }
    }
    if (hosts <= 1) continue;
    int reached = 0;
    std::queue<int> queue;
    queue.push(start);
    seen[static_cast<std::size_t>(start)] = c;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      ++reached;
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(w)] == c) continue;
        if (!g.colors[static_cast<std::size_t>(w)].contains(c)) continue;
        seen[static_cast<std::size_t>(w)] = c;
        queue.push(w);
      }
    }
    if (reached != hosts) {
      ok = false;
      if (broken == nullptr) return false;
      broken->push_back(c);
    }
  }
  return ok;
}

struct NormalizedInstance {
  Instance instance;
  ColorSet base_colors;  // removed terminal colors, charged to every solution
};

/// Removes every color found on any terminal from the whole graph so all
/// terminals become white. Removal is global per color, so the remaining
/// colors keep their host sets.
inline NormalizedInstance normalize_terminals(const Instance& in) {
  NormalizedInstance out{in, {}};
  for (const auto& pair : in.terminals) {
    out.base_colors |= in.graph.colors[static_cast<std::size_t>(pair.s)];
    out.base_colors |= in.graph.colors[static_cast<std::size_t>(pair.t)];
  }
  if (out.base_colors.empty()) return out;
  for (auto& cs : out.instance.graph.colors) cs = cs - out.base_colors;
  return out;
}

}  // namespace minpath
