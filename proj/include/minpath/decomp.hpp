#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"
#include "minpath/planar.hpp"

namespace minpath {

/// Node-weighted graph with one node per color. Node ids are positions in
/// `colors`; the edge uv has length (d(u) + d(v)) / 2.
struct ColorIntersectionGraph {
  std::vector<Color> colors;
  std::vector<std::vector<int>> adj;  // sorted, simple
  std::vector<double> d;

  int num_nodes() const { return static_cast<int>(colors.size()); }
  int node_of(Color c) const {
    auto it = std::lower_bound(colors.begin(), colors.end(), c);
    return (it != colors.end() && *it == c) ? static_cast<int>(it - colors.begin()) : -1;
  }
  double total_weight() const {
    double s = 0.0;
    for (double v : d) s += v;
    return s;
  }
};

/// Builds a graph on nodes 0..n-1 from an edge list (duplicates and
/// self-loops dropped). Node i stands for color i.
inline ColorIntersectionGraph make_color_graph(int n, const std::vector<Edge>& edges,
                                               std::vector<double> d) {
  ColorIntersectionGraph g;
  g.colors.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.colors[static_cast<std::size_t>(i)] = i;
  g.adj.resize(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    g.adj[static_cast<std::size_t>(u)].push_back(v);
    g.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : g.adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  g.d = std::move(d);
  g.d.resize(static_cast<std::size_t>(n), 0.0);
  return g;
}

/// Colors of `survivors` joined whenever they share a dual vertex. `d_by_color`
/// (indexed by color id) gives the node weights; zero when empty.
inline ColorIntersectionGraph build_color_graph(const DualColoredGraph& dual, const ColorSet& survivors,
                                                std::span<const double> d_by_color = {}) {
  ColorIntersectionGraph g;
  g.colors = survivors.ids();
  const int n = g.num_nodes();
  g.adj.resize(static_cast<std::size_t>(n));
  g.d.assign(static_cast<std::size_t>(n), 0.0);
  if (!d_by_color.empty()) {
    for (int i = 0; i < n; ++i) g.d[static_cast<std::size_t>(i)] = d_by_color[static_cast<std::size_t>(g.colors[static_cast<std::size_t>(i)])];
  }
  for (const auto& cs : dual.vertex_colors) {
    std::vector<int> here;
    for (Color c : cs) {
      const int id = g.node_of(c);
      if (id >= 0) here.push_back(id);
    }
    for (std::size_t a = 0; a < here.size(); ++a) {
      for (std::size_t b = a + 1; b < here.size(); ++b) {
        g.adj[static_cast<std::size_t>(here[a])].push_back(here[b]);
        g.adj[static_cast<std::size_t>(here[b])].push_back(here[a]);
      }
    }
  }
  for (auto& list : g.adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return g;
}

/// Single-source distances under the half-sum edge lengths, restricted to
/// nodes with `inside[v]` (all nodes when `inside` is empty).
inline std::vector<double> node_distances(const ColorIntersectionGraph& g, int src,
                                          const std::vector<char>& inside = {}) {
  std::vector<double> dist(static_cast<std::size_t>(g.num_nodes()), kInfinity);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(src)] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[static_cast<std::size_t>(u)]) continue;
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      if (!inside.empty() && !inside[static_cast<std::size_t>(v)]) continue;
      const double nd = du + 0.5 * (g.d[static_cast<std::size_t>(u)] + g.d[static_cast<std::size_t>(v)]);
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

inline double node_distance(const ColorIntersectionGraph& g, int u, int v) {
  if (u == v) return 0.0;
  return node_distances(g, u)[static_cast<std::size_t>(v)];
}

enum class Strategy { ball_carving, kpr_chop };

inline std::string to_string(Strategy s) { return s == Strategy::ball_carving ? "ball_carving" : "kpr_chop"; }

inline Strategy parse_strategy(const std::string& s) {
  if (s == "ball_carving") return Strategy::ball_carving;
  if (s == "kpr_chop") return Strategy::kpr_chop;
  throw Error(ErrorCode::invalid_argument, "unknown strategy '" + s + "'");
}

struct Decomposition {
  std::vector<int> cut;                     // node ids, sorted
  std::vector<std::vector<int>> components;  // node ids, each sorted; ordered by first node
  double delta = 0.0;
  int fallback_components = 0;  // kpr_chop components re-carved by ball carving

  ColorSet cut_colors(const ColorIntersectionGraph& g) const {
    std::vector<Color> out;
    for (int v : cut) out.push_back(g.colors[static_cast<std::size_t>(v)]);
    return ColorSet(std::move(out));
  }
};

/// Cardinality bound guaranteed by ball carving.
inline double ball_carving_bound(const ColorIntersectionGraph& g, double delta) {
  return 4.0 * std::log(g.num_nodes() + 2.0) / delta * g.total_weight();
}

namespace detail {

/// Ball growing on the nodes marked in `alive`, which it clears as nodes are
/// carved. With v's interval [dist - d/2, dist + d/2] around the center, a
/// radius r puts v in the ball when the interval ends before r and in the cut
/// when it contains r. The radius satisfies F(r) <= K * V(r), where F counts
/// the intervals containing r and V(r) = w0 + covered length; V' = F, so such
/// an r exists below delta/2 whenever K = 2 ln(1 + W/w0) / delta.
inline void ball_carve(const ColorIntersectionGraph& g, double delta, std::vector<char>& alive,
                       std::vector<int>& cut, std::vector<std::vector<int>>& components) {
  const int n = g.num_nodes();
  const double total = g.total_weight();
  const double w0 = n > 0 ? total / n : 0.0;
  const double k = total > 0.0 ? 2.0 * std::log(1.0 + total / w0) / delta : 0.0;
  const double half = delta / 2.0;

  for (int c = 0; c < n; ++c) {
    if (!alive[static_cast<std::size_t>(c)]) continue;
    const auto dist = node_distances(g, c, alive);
    std::vector<int> near;
    std::vector<double> breaks{0.0, half};
    for (int v = 0; v < n; ++v) {
      const double dv = dist[static_cast<std::size_t>(v)];
      if (dv == kInfinity) continue;
      const double lo = dv - g.d[static_cast<std::size_t>(v)] / 2.0;
      const double hi = dv + g.d[static_cast<std::size_t>(v)] / 2.0;
      if (lo >= half) continue;
      near.push_back(v);
      if (lo > 0.0) breaks.push_back(lo);
      if (hi > 0.0 && hi < half) breaks.push_back(hi);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    // Nodes the assignment below would cut at radius r. Away from interval
    // endpoints this is F(r); rounding can land r on an endpoint, so the
    // candidate is judged by what it would actually cut.
    auto cut_count = [&](double r) {
      int cnt = 0;
      for (int v : near) {
        const double dv = dist[static_cast<std::size_t>(v)];
        const double wv = g.d[static_cast<std::size_t>(v)];
        if (!(dv + wv / 2.0 < r) && dv - wv / 2.0 <= r) ++cnt;
      }
      return cnt;
    };

    double best_r = -1.0;
    int best_f = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double a = breaks[i];
      const double b = breaks[i + 1];
      const double mid = 0.5 * (a + b);
      int f = 0;
      double v_at_a = w0;
      for (int v : near) {
        const double dv = dist[static_cast<std::size_t>(v)];
        const double wv = g.d[static_cast<std::size_t>(v)];
        const double lo = dv - wv / 2.0;
        const double hi = dv + wv / 2.0;
        if (lo < mid && mid < hi) ++f;
        v_at_a += std::clamp(a - lo, 0.0, wv);
      }
      // V(r) = v_at_a + f (r - a) on [a, b]; need f <= k V(r).
      double start = a;
      if (f > 0) {
        if (k <= 0.0) continue;
        const double need = f / k;  // V(r) >= need
        if (v_at_a < need) start = a + (need - v_at_a) / f;
        if (start >= b) continue;
      }
      const double r = 0.5 * (start + b);
      const int cnt = cut_count(r);
      if (cnt > f && cnt > k * (v_at_a + f * (r - a))) continue;
      if (best_r < 0.0 || cnt < best_f) {
        best_f = cnt;
        best_r = r;
      }
    }
    if (best_r < 0.0) {
      throw Error(ErrorCode::invariant_violation, "ball carving found no admissible radius");
    }

    std::vector<int> ball;
    for (int v : near) {
      const double dv = dist[static_cast<std::size_t>(v)];
      const double wv = g.d[static_cast<std::size_t>(v)];
      if (dv + wv / 2.0 < best_r) {
        ball.push_back(v);
      } else if (dv - wv / 2.0 <= best_r) {
        cut.push_back(v);
      } else {
        continue;
      }
      alive[static_cast<std::size_t>(v)] = 0;
    }
    if (!ball.empty()) components.push_back(std::move(ball));
  }
}

/// Largest full-graph distance between two nodes of `comp`.
inline double component_diameter(const ColorIntersectionGraph& g, const std::vector<int>& comp) {
  double worst = 0.0;
  for (int u : comp) {
    const auto dist = node_distances(g, u);
    for (int v : comp) worst = std::max(worst, dist[static_cast<std::size_t>(v)]);
  }
  return worst;
}

/// Connected pieces of the subgraph induced by `members`.
inline std::vector<std::vector<int>> induced_components(const ColorIntersectionGraph& g,
                                                        const std::vector<int>& members) {
  std::vector<char> in(static_cast<std::size_t>(g.num_nodes()), 0);
  for (int v : members) in[static_cast<std::size_t>(v)] = 1;
  std::vector<std::vector<int>> out;
  for (int start : members) {
    if (!in[static_cast<std::size_t>(start)]) continue;
    std::vector<int> comp{start};
    in[static_cast<std::size_t>(start)] = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int w : g.adj[static_cast<std::size_t>(comp[i])]) {
        if (!in[static_cast<std::size_t>(w)]) continue;
        in[static_cast<std::size_t>(w)] = 0;
        comp.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Three rounds of chopping each piece into bands of width delta around its
/// lowest-id node; every node whose interval meets a band boundary is cut.
/// The band offset is the one cutting the fewest nodes.
inline void kpr_chop(const ColorIntersectionGraph& g, double delta, std::vector<int>& cut,
                     std::vector<std::vector<int>>& components) {
  const int n = g.num_nodes();
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  std::vector<std::vector<int>> pieces = induced_components(g, all);
  std::vector<char> inside(static_cast<std::size_t>(n), 0);

  for (int round = 0; round < 3; ++round) {
    std::vector<std::vector<int>> next;
    for (const auto& piece : pieces) {
      for (int v : piece) inside[static_cast<std::size_t>(v)] = 1;
      const auto dist = node_distances(g, piece.front(), inside);
      for (int v : piece) inside[static_cast<std::size_t>(v)] = 0;

      std::vector<double> lo(piece.size());
      std::vector<double> hi(piece.size());
      std::vector<double> phases{0.0};
      for (std::size_t i = 0; i < piece.size(); ++i) {
        const int v = piece[i];
        lo[i] = dist[static_cast<std::size_t>(v)] - g.d[static_cast<std::size_t>(v)] / 2.0;
        hi[i] = dist[static_cast<std::size_t>(v)] + g.d[static_cast<std::size_t>(v)] / 2.0;
        phases.push_back(std::fmod(std::fmod(lo[i], delta) + delta, delta));
        phases.push_back(std::fmod(std::fmod(hi[i], delta) + delta, delta));
      }
      std::sort(phases.begin(), phases.end());
      phases.erase(std::unique(phases.begin(), phases.end()), phases.end());
      phases.push_back(delta);

      auto cut_at = [&](double offset, std::vector<char>* mark) {
        int count = 0;
        for (std::size_t i = 0; i < piece.size(); ++i) {
          // Smallest boundary offset + j * delta that is >= lo.
          const double j = std::ceil((lo[i] - offset) / delta);
          const double boundary = offset + j * delta;
          if (boundary <= hi[i]) {
            ++count;
            if (mark) (*mark)[i] = 1;
          }
        }
        return count;
      };
      double best_offset = 0.0;
      int best = -1;
      for (std::size_t p = 0; p + 1 < phases.size(); ++p) {
        const double offset = 0.5 * (phases[p] + phases[p + 1]);
        const int c = cut_at(offset, nullptr);
        if (best < 0 || c < best) {
          best = c;
          best_offset = offset;
        }
      }
      std::vector<char> mark(piece.size(), 0);
      cut_at(best_offset, &mark);
      for (std::size_t i = 0; i < piece.size(); ++i) {
        if (mark[i]) cut.push_back(piece[i]);
      }
      // Split what is left by band, then by connectivity.
      std::vector<std::pair<long long, int>> banded;
      for (std::size_t i = 0; i < piece.size(); ++i) {
        if (mark[i]) continue;
        banded.emplace_back(static_cast<long long>(std::floor((lo[i] - best_offset) / delta)), piece[i]);
      }
      std::sort(banded.begin(), banded.end());
      for (std::size_t i = 0; i < banded.size();) {
        std::vector<int> band;
        std::size_t j = i;
        while (j < banded.size() && banded[j].first == banded[i].first) band.push_back(banded[j++].second);
        std::sort(band.begin(), band.end());
        for (auto& comp : induced_components(g, band)) next.push_back(std::move(comp));
        i = j;
      }
    }
    pieces = std::move(next);
  }
  components = std::move(pieces);
}

}  // namespace detail

/// Removes a node set so that every remaining component has diameter at most
/// delta, distances measured in the whole graph.
inline Decomposition decompose(const ColorIntersectionGraph& g, double delta,
                               Strategy strategy = Strategy::ball_carving) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::invalid_delta, "delta must be positive, got " + std::to_string(delta));
  }
  for (double v : g.d) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "node weights must be finite and nonnegative");
  }
  Decomposition out;
  out.delta = delta;
  const int n = g.num_nodes();
  if (strategy == Strategy::ball_carving) {
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    detail::ball_carve(g, delta, alive, out.cut, out.components);
    if (static_cast<double>(out.cut.size()) > ball_carving_bound(g, delta) + 1e-9) {
      throw Error(ErrorCode::invariant_violation, "ball carving cut exceeds its size bound");
    }
  } else {
    std::vector<std::vector<int>> chopped;
    detail::kpr_chop(g, delta, out.cut, chopped);
    for (auto& comp : chopped) {
      if (detail::component_diameter(g, comp) <= delta) {
        out.components.push_back(std::move(comp));
        continue;
      }
      ++out.fallback_components;
      std::vector<char> alive(static_cast<std::size_t>(n), 0);
      for (int v : comp) alive[static_cast<std::size_t>(v)] = 1;
      detail::ball_carve(g, delta, alive, out.cut, out.components);
    }
  }
  std::sort(out.cut.begin(), out.cut.end());
  for (auto& comp : out.components) std::sort(comp.begin(), comp.end());
  std::sort(out.components.begin(), out.components.end());
  return out;
}

}  // namespace minpath
