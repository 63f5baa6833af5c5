#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"

namespace minpath {

// Directed edge ids: 2e runs edges[e].first -> edges[e].second, 2e+1 the reverse.
inline int dart_tail(const ColoredPlanarGraph& g, int dart) {
  const auto& [u, v] = g.edges[static_cast<std::size_t>(dart / 2)];
  return (dart % 2 == 0) ? u : v;
}

inline int dart_head(const ColoredPlanarGraph& g, int dart) {
  const auto& [u, v] = g.edges[static_cast<std::size_t>(dart / 2)];
  return (dart % 2 == 0) ? v : u;
}

struct FaceList {
  std::vector<std::vector<int>> faces;  // cyclic dart sequences
  std::vector<int> face_of;             // dart -> face id

  int num_faces() const { return static_cast<int>(faces.size()); }
};

/// Walks every face of the rotation system: after arriving at v along edge e,
/// leave along the edge following e in v's clockwise order. Assumes the
/// rotation lists are well formed (see validate); does not check Euler.
inline FaceList trace_faces(const ColoredPlanarGraph& g) {
  const std::size_t darts = 2 * g.edges.size();
  std::vector<int> pos_at_head(darts, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& rot = g.rotation[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const int e = rot[i];
      const auto& [a, b] = g.edges[static_cast<std::size_t>(e)];
      if (b == v) pos_at_head[static_cast<std::size_t>(2 * e)] = static_cast<int>(i);
      if (a == v) pos_at_head[static_cast<std::size_t>(2 * e + 1)] = static_cast<int>(i);
    }
  }

  FaceList out;
  out.face_of.assign(darts, -1);
  for (std::size_t start = 0; start < darts; ++start) {
    if (out.face_of[start] != -1) continue;
    const int face_id = out.num_faces();
    std::vector<int> cycle;
    int dart = static_cast<int>(start);
    while (out.face_of[static_cast<std::size_t>(dart)] == -1) {
      out.face_of[static_cast<std::size_t>(dart)] = face_id;
      cycle.push_back(dart);
      const int v = dart_head(g, dart);
      const auto& rot = g.rotation[static_cast<std::size_t>(v)];
      const int i = pos_at_head[static_cast<std::size_t>(dart)];
      const int next_edge = rot[static_cast<std::size_t>((i + 1) % static_cast<int>(rot.size()))];
      dart = (g.edges[static_cast<std::size_t>(next_edge)].first == v) ? 2 * next_edge
                                                                      : 2 * next_edge + 1;
    }
    out.faces.push_back(std::move(cycle));
  }
  return out;
}

/// Face list of a connected embedded graph; a graph without edges has the
/// single (empty) outer face.
inline FaceList faces(const ColoredPlanarGraph& g) {
  if (!g.embedded) throw Error(ErrorCode::not_planar, "graph carries no embedding");
  FaceList out = trace_faces(g);
  if (g.edges.empty()) out.faces.emplace_back();
  const int euler = g.num_vertices() - g.num_edges() + out.num_faces();
  if (euler != 2) {
    throw Error(ErrorCode::euler_violation,
                "V - E + F = " + std::to_string(euler) + " (expected 2)");
  }
  return out;
}

/// Vertices on the boundary of a face, sorted and unique.
inline std::vector<int> face_boundary(const ColoredPlanarGraph& g, const std::vector<int>& face) {
  std::vector<int> out;
  out.reserve(face.size());
  for (int dart : face) out.push_back(dart_tail(g, dart));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ReferencePath {
  std::vector<int> vertices;  // s .. t
  std::vector<int> edges;     // edge ids along the path

  int s() const { return vertices.front(); }
  int t() const { return vertices.back(); }
};

/// Fewest-edge s-t path; BFS explores neighbours in increasing vertex id.
inline ReferencePath reference_path(const ColoredPlanarGraph& g, int s, int t) {
  const auto adj = adjacency(g);
  auto path = bfs_path(adj, s, t, [](int) { return true; });
  if (path.empty()) {
    throw Error(ErrorCode::disconnected,
                "no path between " + std::to_string(s) + " and " + std::to_string(t));
  }
  ReferencePath out;
  out.vertices = std::move(path);
  std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(g.num_vertices()));
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& [u, v] = g.edges[static_cast<std::size_t>(e)];
    incident[static_cast<std::size_t>(u)].emplace_back(v, e);
    incident[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  for (std::size_t i = 0; i + 1 < out.vertices.size(); ++i) {
    const int u = out.vertices[i];
    const int w = out.vertices[i + 1];
    for (const auto& [nb, e] : incident[static_cast<std::size_t>(u)]) {
      if (nb == w) {
        out.edges.push_back(e);
        break;
      }
    }
  }
  return out;
}

struct DualEdge {
  int x = 0;  // face on the side of dart 2e
  int y = 0;  // face on the side of dart 2e+1
  ColorSet colors;
  bool crossing = false;
};

/// Faces as vertices. Dual edge i is the dual of primal edge i, so
/// primal_of(i) == i; multi-edges and self-loops are kept.
struct DualColoredGraph {
  int num_colors = 0;
  std::vector<ColorSet> vertex_colors;
  std::vector<DualEdge> edges;

  int num_vertices() const { return static_cast<int>(vertex_colors.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int primal_of(int dual_edge) const { return dual_edge; }
};

/// Dual with colors sigma(e*) = sigma(u) | sigma(v) and sigma(v*) the union
/// over incident dual edges. `ref` (optional) sets the crossing flags.
inline DualColoredGraph build_dual(const ColoredPlanarGraph& g, const FaceList& fl,
                                   const ReferencePath* ref = nullptr) {
  DualColoredGraph d;
  d.num_colors = g.num_colors;
  d.vertex_colors.resize(fl.faces.size());
  d.edges.resize(g.edges.size());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& [u, v] = g.edges[static_cast<std::size_t>(e)];
    DualEdge& de = d.edges[static_cast<std::size_t>(e)];
    de.x = fl.face_of[static_cast<std::size_t>(2 * e)];
    de.y = fl.face_of[static_cast<std::size_t>(2 * e + 1)];
    de.colors = g.colors[static_cast<std::size_t>(u)] | g.colors[static_cast<std::size_t>(v)];
    d.vertex_colors[static_cast<std::size_t>(de.x)] |= de.colors;
    d.vertex_colors[static_cast<std::size_t>(de.y)] |= de.colors;
  }
  if (ref != nullptr) {
    for (int e : ref->edges) d.edges[static_cast<std::size_t>(e)].crossing = true;
  }
  return d;
}

inline DualColoredGraph build_dual(const ColoredPlanarGraph& g, const FaceList& fl,
                                   const ReferencePath& ref) {
  return build_dual(g, fl, &ref);
}

/// Each color must span a connected set of dual vertices, moving only along
/// dual edges that carry the color.
inline ValidationReport dual_color_connectivity_check(const DualColoredGraph& d) {
  ValidationReport report;
  std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(d.num_vertices()));
  for (int i = 0; i < d.num_edges(); ++i) {
    const auto& e = d.edges[static_cast<std::size_t>(i)];
    incident[static_cast<std::size_t>(e.x)].emplace_back(e.y, i);
    incident[static_cast<std::size_t>(e.y)].emplace_back(e.x, i);
  }
  std::vector<int> seen(static_cast<std::size_t>(d.num_vertices()), -1);
  for (Color c = 0; c < d.num_colors; ++c) {
    int start = -1;
    int hosts = 0;
    for (int v = 0; v < d.num_vertices(); ++v) {
      if (d.vertex_colors[static_cast<std::size_t>(v)].contains(c)) {
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
      for (const auto& [w, ei] : incident[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(w)] == c) continue;
        if (!d.edges[static_cast<std::size_t>(ei)].colors.contains(c)) continue;
        seen[static_cast<std::size_t>(w)] = c;
        queue.push(w);
      }
    }
    if (reached != hosts) {
      report.add("dual_color_disconnected", c,
                 "color " + std::to_string(c) + " reaches " + std::to_string(reached) + " of " +
                     std::to_string(hosts) + " dual vertices");
    }
  }
  return report;
}

}  // namespace minpath
