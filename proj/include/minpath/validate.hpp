#pragma once

#include <cmath>
#include <set>
#include <string>

#include "minpath/instance.hpp"
#include "minpath/planar.hpp"

namespace minpath {

namespace detail {

inline bool connected(const ColoredPlanarGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return true;
  const auto adj = adjacency(g);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace detail

/// Checks every structural invariant of an instance. Violations come out in a
/// fixed order: colors, edges, connectivity, color connectivity, rotation,
/// Euler, weights, terminals.
inline ValidationReport validate(const Instance& in) {
  ValidationReport r;
  const auto& g = in.graph;
  const int n = g.num_vertices();
  const int m = g.num_colors;

  if (m < 0) r.add("num_colors", -1, "num_colors is negative");
  for (int v = 0; v < n; ++v) {
    for (Color c : g.colors[static_cast<std::size_t>(v)]) {
      if (c < 0 || c >= m) {
        r.add("color_out_of_range", v,
              "vertex " + std::to_string(v) + " carries color " + std::to_string(c));
      }
    }
  }

  bool edges_ok = true;
  std::set<std::pair<int, int>> seen_edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if (u < 0 || v < 0 || u >= n || v >= n) {
      r.add("invalid_edge", e, "edge " + std::to_string(e) + " has an endpoint out of range");
      edges_ok = false;
      continue;
    }
    if (u == v) {
      r.add("self_loop", e, "edge " + std::to_string(e) + " is a self-loop");
      edges_ok = false;
      continue;
    }
    if (!seen_edges.insert({std::min(u, v), std::max(u, v)}).second) {
      r.add("parallel_edge", e, "edge " + std::to_string(e) + " duplicates an earlier edge");
      edges_ok = false;
    }
  }

  if (edges_ok && !detail::connected(g)) r.add("disconnected", -1, "graph is not connected");

  std::vector<Color> broken;
  if (!is_color_connected(g, &broken)) {
    for (Color c : broken) {
      r.add("color_connectivity", c,
            "host vertices of color " + std::to_string(c) + " are not connected");
    }
  }

  bool rotation_ok = edges_ok;
  if (!g.embedded) {
    r.add("missing_embedding", -1, "instance has no rotation system");
    rotation_ok = false;
  } else if (static_cast<int>(g.rotation.size()) != n) {
    r.add("rotation", -1, "rotation has " + std::to_string(g.rotation.size()) +
                              " entries for " + std::to_string(n) + " vertices");
    rotation_ok = false;
  } else if (edges_ok) {
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
    for (int e = 0; e < g.num_edges(); ++e) {
      incident[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].first)].push_back(e);
      incident[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].second)].push_back(e);
    }
    for (int v = 0; v < n; ++v) {
      auto listed = g.rotation[static_cast<std::size_t>(v)];
      std::sort(listed.begin(), listed.end());
      if (listed != incident[static_cast<std::size_t>(v)]) {
        r.add("rotation", v,
              "rotation at vertex " + std::to_string(v) +
                  " does not list its incident edges exactly once");
        rotation_ok = false;
      }
    }
  }

  if (rotation_ok && !r.has("disconnected")) {
    FaceList fl = trace_faces(g);
    const int f = g.edges.empty() ? 1 : fl.num_faces();
    const int euler = n - g.num_edges() + f;
    if (euler != 2) {
      r.add("euler", -1, "V - E + F = " + std::to_string(euler) + " (expected 2)");
    }
  }

  if (!g.color_weights.empty()) {
    if (static_cast<int>(g.color_weights.size()) != m) {
      r.add("color_weights", -1, "color_weights must have num_colors entries");
    }
    for (std::size_t c = 0; c < g.color_weights.size(); ++c) {
      const double w = g.color_weights[c];
      if (!(w >= 0.0) || !std::isfinite(w)) {
        r.add("color_weights", static_cast<int>(c), "weight must be finite and nonnegative");
      }
    }
  }

  if (in.terminals.empty()) r.add("terminal", -1, "at least one terminal pair is required");
  for (std::size_t k = 0; k < in.terminals.size(); ++k) {
    const auto& p = in.terminals[k];
    const int id = static_cast<int>(k);
    if (p.s < 0 || p.s >= n || p.t < 0 || p.t >= n) {
      r.add("terminal", id, "pair " + std::to_string(k) + " references an unknown vertex");
    } else if (p.s == p.t) {
      r.add("terminal", id, "pair " + std::to_string(k) + " has s == t");
    }
    if (!(p.prize >= 0.0)) r.add("terminal", id, "prize must be nonnegative");
  }
  return r;
}

}  // namespace minpath
