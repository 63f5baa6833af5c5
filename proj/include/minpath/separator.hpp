#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"
#include "minpath/planar.hpp"

namespace minpath {

enum class Layer : std::uint8_t { a, b };
enum class ArcKind : std::uint8_t { clique, free, source, sink };

struct AuxArc {
  int from = 0;
  int to = 0;
  double weight = 0.0;
  ArcKind kind = ArcKind::free;
  Color pays = -1;  // color whose weight the arc carries, -1 for zero arcs
};

/// Two-layer search graph. Layer nodes are numbered per dual vertex i and
/// color j in sigma(v_i*): a-node k in [0, N), its b twin at N + k; the
/// source of dual vertex i sits at 2N + i and its sink at 2N + |V*| + i.
class AuxiliaryGraph {
 public:
  AuxiliaryGraph() = default;

  /// Builds the topology; arc weights come from `weights` (one per color).
  AuxiliaryGraph(const DualColoredGraph& dual, std::span<const double> weights) {
    const int nd = dual.num_vertices();
    num_dual_ = nd;
    offset_.assign(static_cast<std::size_t>(nd) + 1, 0);
    for (int i = 0; i < nd; ++i) {
      offset_[static_cast<std::size_t>(i) + 1] =
          offset_[static_cast<std::size_t>(i)] + static_cast<int>(dual.vertex_colors[static_cast<std::size_t>(i)].size());
    }
    per_layer_ = offset_.back();
    node_color_.resize(static_cast<std::size_t>(per_layer_));
    node_dual_.resize(static_cast<std::size_t>(per_layer_));
    for (int i = 0; i < nd; ++i) {
      const auto& cs = dual.vertex_colors[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const int node = offset_[static_cast<std::size_t>(i)] + static_cast<int>(k);
        node_color_[static_cast<std::size_t>(node)] = cs[k];
        node_dual_[static_cast<std::size_t>(node)] = i;
      }
    }

    std::vector<AuxArc> arcs;
    // Clique arcs: entering color l costs w_l.
    for (int i = 0; i < nd; ++i) {
      const int lo = offset_[static_cast<std::size_t>(i)];
      const int hi = offset_[static_cast<std::size_t>(i) + 1];
      for (int layer = 0; layer < 2; ++layer) {
        const int shift = layer * per_layer_;
        for (int p = lo; p < hi; ++p) {
          for (int q = lo; q < hi; ++q) {
            if (p == q) continue;
            arcs.push_back({p + shift, q + shift, 0.0, ArcKind::clique, node_color_[static_cast<std::size_t>(q)]});
          }
        }
      }
    }
    // Free arcs along dual edges, switching layers on crossing edges.
    for (const auto& e : dual.edges) {
      for (Color j : e.colors) {
        const int ax = a_node(e.x, j);
        const int ay = a_node(e.y, j);
        const int bx = ax + per_layer_;
        const int by = ay + per_layer_;
        if (!e.crossing) {
          if (ax == ay) continue;
          add_both(arcs, ax, ay);
          add_both(arcs, bx, by);
        } else {
          add_both(arcs, ax, by);
          if (e.x != e.y) add_both(arcs, ay, bx);
        }
      }
    }
    for (int i = 0; i < nd; ++i) {
      for (int k = offset_[static_cast<std::size_t>(i)]; k < offset_[static_cast<std::size_t>(i) + 1]; ++k) {
        arcs.push_back({source(i), k, 0.0, ArcKind::source, node_color_[static_cast<std::size_t>(k)]});
        arcs.push_back({k + per_layer_, sink(i), 0.0, ArcKind::sink, -1});
      }
    }

    std::stable_sort(arcs.begin(), arcs.end(), [](const AuxArc& l, const AuxArc& r) {
      return l.from != r.from ? l.from < r.from : l.to < r.to;
    });
    arcs_ = std::move(arcs);
    out_begin_.assign(static_cast<std::size_t>(num_nodes()) + 1, 0);
    for (const auto& arc : arcs_) ++out_begin_[static_cast<std::size_t>(arc.from) + 1];
    for (std::size_t v = 1; v < out_begin_.size(); ++v) out_begin_[v] += out_begin_[v - 1];
    reweight(weights);
  }

  void reweight(std::span<const double> weights) {
    for (auto& arc : arcs_) {
      arc.weight = arc.pays < 0 ? 0.0 : weights[static_cast<std::size_t>(arc.pays)];
    }
  }

  int num_nodes() const { return 2 * per_layer_ + 2 * num_dual_; }
  int num_dual_vertices() const { return num_dual_; }
  int nodes_per_layer() const { return per_layer_; }
  int source(int i) const { return 2 * per_layer_ + i; }
  int sink(int i) const { return 2 * per_layer_ + num_dual_ + i; }
  const std::vector<AuxArc>& arcs() const { return arcs_; }

  std::span<const AuxArc> out_arcs(int node) const {
    const auto b = static_cast<std::size_t>(out_begin_[static_cast<std::size_t>(node)]);
    const auto e = static_cast<std::size_t>(out_begin_[static_cast<std::size_t>(node) + 1]);
    return std::span<const AuxArc>(arcs_.data() + b, e - b);
  }

  bool is_layer_node(int node) const { return node < 2 * per_layer_; }
  Layer layer(int node) const { return node < per_layer_ ? Layer::a : Layer::b; }
  /// Color of a layer node; -1 for sources and sinks.
  Color color(int node) const {
    if (!is_layer_node(node)) return -1;
    return node_color_[static_cast<std::size_t>(node % per_layer_)];
  }
  int dual_vertex(int node) const {
    if (is_layer_node(node)) return node_dual_[static_cast<std::size_t>(node % per_layer_)];
    return (node - 2 * per_layer_) % num_dual_;
  }

  /// a-layer node of dual vertex i and color j (j must be in sigma(v_i*)).
  int a_node(int i, Color j) const {
    const int lo = offset_[static_cast<std::size_t>(i)];
    const int hi = offset_[static_cast<std::size_t>(i) + 1];
    auto first = node_color_.begin() + lo;
    auto last = node_color_.begin() + hi;
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) throw Error(ErrorCode::invariant_violation, "color missing at dual vertex");
    return static_cast<int>(it - node_color_.begin());
  }

 private:
  static void add_both(std::vector<AuxArc>& arcs, int p, int q) {
    arcs.push_back({p, q, 0.0, ArcKind::free, -1});
    arcs.push_back({q, p, 0.0, ArcKind::free, -1});
  }

  int num_dual_ = 0;
  int per_layer_ = 0;
  std::vector<int> offset_;
  std::vector<Color> node_color_;
  std::vector<int> node_dual_;
  std::vector<AuxArc> arcs_;
  std::vector<int> out_begin_;
};

inline AuxiliaryGraph build_aux(const DualColoredGraph& dual, std::span<const double> weights) {
  return AuxiliaryGraph(dual, weights);
}

struct SeparatorResult {
  ColorSet colors;
  double weight = 0.0;
  std::vector<int> witness_cycle;  // dual vertex ids; empty for terminal-color singletons
  std::vector<int> witness_path;   // auxiliary node ids, source .. sink
  int inter_layer_arcs = 0;
};

/// True iff removing V(S) leaves s and t disconnected (removing a terminal
/// counts as disconnecting).
inline bool verify_separator(const ColoredPlanarGraph& g, const ColorSet& s_colors, int s, int t) {
  const auto adj = adjacency(g);
  auto open = [&](int v) { return !g.colors[static_cast<std::size_t>(v)].intersects(s_colors); };
  return bfs_path(adj, s, t, open).empty();
}

namespace detail {

inline int thread_budget() {
  int n = 1;
  if (const char* env = std::getenv("MINPATH_THREADS")) n = std::max(1, std::atoi(env));
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0) n = std::min(n, static_cast<int>(hw));
  return n;
}

inline bool better_separator(double w, const ColorSet& s, const SeparatorResult& best) {
  const double tie = 1e-12 * std::max(1.0, std::abs(best.weight));
  if (w < best.weight - tie) return true;
  if (w > best.weight + tie) return false;
  return s < best.colors;
}

}  // namespace detail

/// Min-weight color separator oracle for one terminal pair. Construction does
/// all weight-independent work (faces, reference path, dual, auxiliary
/// topology); solve() may then be called with many weight vectors.
///
/// Terminal colors are handled exactly: any color on s or t is a separator
/// by itself, and separators avoiding those colors are found on the graph
/// with the terminal colors removed.
class SeparationOracle {
 public:
  SeparationOracle(const ColoredPlanarGraph& g, int s, int t) : s_(s), t_(t), num_colors_(g.num_colors) {
    if (!g.embedded) throw Error(ErrorCode::not_planar, "separation needs an embedded graph");
    terminal_colors_ = g.colors[static_cast<std::size_t>(s)] | g.colors[static_cast<std::size_t>(t)];
    ColoredPlanarGraph whitened = g;
    if (!terminal_colors_.empty()) {
      for (auto& cs : whitened.colors) cs = cs - terminal_colors_;
    }
    const auto adj = adjacency(whitened);
    white_path_ = !bfs_path(adj, s, t, [&](int v) { return whitened.is_white(v); }).empty();
    if (white_path_) return;

    const FaceList fl = faces(whitened);
    const ReferencePath ref = reference_path(whitened, s, t);
    dual_ = build_dual(whitened, fl, ref);
    aux_ = AuxiliaryGraph(dual_, std::vector<double>(static_cast<std::size_t>(g.num_colors), 0.0));
    // A separating cycle crosses the reference path, so it passes through an
    // endpoint of some crossing dual edge; searching from those suffices.
    for (const auto& e : dual_.edges) {
      if (!e.crossing) continue;
      for (int f : {e.x, e.y}) {
        if (!dual_.vertex_colors[static_cast<std::size_t>(f)].empty()) sources_.push_back(f);
      }
    }
    std::sort(sources_.begin(), sources_.end());
    sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
  }

  /// False when an s-t path avoiding every non-terminal color exists.
  bool has_path_separators() const { return !white_path_; }
  const DualColoredGraph& dual() const { return dual_; }
  const AuxiliaryGraph& aux() const { return aux_; }
  const std::vector<int>& sources() const { return sources_; }

  std::optional<SeparatorResult> solve(std::span<const double> weights) {
    if (static_cast<int>(weights.size()) != num_colors_) {
      throw Error(ErrorCode::invalid_argument, "expected one weight per color");
    }
    std::optional<SeparatorResult> best;
    for (Color c : terminal_colors_) {
      SeparatorResult cand;
      cand.colors = ColorSet{c};
      cand.weight = weights[static_cast<std::size_t>(c)];
      if (!best || detail::better_separator(cand.weight, cand.colors, *best)) best = std::move(cand);
    }
    if (white_path_ || sources_.empty()) return best;

    aux_.reweight(weights);
    std::vector<std::optional<SeparatorResult>> per_source(sources_.size());
    std::atomic<double> bound{best ? best->weight : std::numeric_limits<double>::infinity()};

    auto run_range = [&](std::size_t begin, std::size_t stride) {
      Search search(aux_);
      for (std::size_t k = begin; k < sources_.size(); k += stride) {
        per_source[k] = search.run(sources_[k], weights, bound);
      }
    };
    const int threads = std::min<int>(detail::thread_budget(), static_cast<int>(sources_.size()));
    if (threads <= 1) {
      run_range(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(run_range, static_cast<std::size_t>(w), static_cast<std::size_t>(threads));
      for (auto& th : pool) th.join();
    }
    for (auto& cand : per_source) {
      if (!cand) continue;
      if (!best || detail::better_separator(cand->weight, cand->colors, *best)) best = std::move(cand);
    }
    return best;
  }

 private:
  // One Dijkstra workspace, reused across sources.
  class Search {
   public:
    explicit Search(const AuxiliaryGraph& aux)
        : aux_(aux),
          dist_(static_cast<std::size_t>(aux.num_nodes()), kInfinity),
          parent_(static_cast<std::size_t>(aux.num_nodes()), -1) {}

    std::optional<SeparatorResult> run(int dual_source, std::span<const double> weights,
                                       std::atomic<double>& bound) {
      for (int v : touched_) {
        dist_[static_cast<std::size_t>(v)] = kInfinity;
        parent_[static_cast<std::size_t>(v)] = -1;
      }
      touched_.clear();
      const int src = aux_.source(dual_source);
      const int dst = aux_.sink(dual_source);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      set(src, 0.0, -1);
      heap.emplace(0.0, src);
      bool reached = false;
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist_[static_cast<std::size_t>(u)]) continue;
        const double limit = bound.load(std::memory_order_relaxed);
        if (d > limit + 1e-12 * std::max(1.0, std::abs(limit))) break;
        if (u == dst) {
          reached = true;
          break;
        }
        for (const AuxArc& arc : aux_.out_arcs(u)) {
          // Other sources and sinks are never intermediate nodes.
          if (arc.kind == ArcKind::sink && arc.to != dst) continue;
          const double nd = d + arc.weight;
          if (nd < dist_[static_cast<std::size_t>(arc.to)]) {
            set(arc.to, nd, u);
            heap.emplace(nd, arc.to);
          }
        }
      }
      if (!reached) return std::nullopt;

      SeparatorResult res;
      const double path_len = dist_[static_cast<std::size_t>(dst)];
      for (int v = dst; v != -1; v = parent_[static_cast<std::size_t>(v)]) res.witness_path.push_back(v);
      std::reverse(res.witness_path.begin(), res.witness_path.end());
      std::vector<Color> used;
      for (std::size_t i = 0; i < res.witness_path.size(); ++i) {
        const int v = res.witness_path[i];
        if (aux_.is_layer_node(v)) used.push_back(aux_.color(v));
        const int dv = aux_.dual_vertex(v);
        if (res.witness_cycle.empty() || res.witness_cycle.back() != dv) res.witness_cycle.push_back(dv);
        if (i > 0) {
          const int u = res.witness_path[i - 1];
          if (aux_.is_layer_node(u) && aux_.is_layer_node(v) && aux_.layer(u) != aux_.layer(v)) {
            ++res.inter_layer_arcs;
          }
        }
      }
      if (res.witness_cycle.size() > 1 && res.witness_cycle.front() == res.witness_cycle.back()) {
        res.witness_cycle.pop_back();
      }
      res.colors = ColorSet(std::move(used));
      res.weight = res.colors.weight(weights);
      if (std::abs(res.weight - path_len) > 1e-9 * std::max(1.0, path_len)) {
        throw Error(ErrorCode::invariant_violation,
                    "separator path pays a color twice (path " + std::to_string(path_len) +
                        ", colors " + std::to_string(res.weight) + ")");
      }
      double cur = bound.load(std::memory_order_relaxed);
      while (res.weight < cur && !bound.compare_exchange_weak(cur, res.weight)) {
      }
      return res;
    }

   private:
    void set(int v, double d, int p) {
      if (dist_[static_cast<std::size_t>(v)] == kInfinity) touched_.push_back(v);
      dist_[static_cast<std::size_t>(v)] = d;
      parent_[static_cast<std::size_t>(v)] = p;
    }

    const AuxiliaryGraph& aux_;
    std::vector<double> dist_;
    std::vector<int> parent_;
    std::vector<int> touched_;
  };

  int s_;
  int t_;
  int num_colors_;
  ColorSet terminal_colors_;
  bool white_path_ = false;
  DualColoredGraph dual_;
  AuxiliaryGraph aux_;
  std::vector<int> sources_;
};

/// Minimum-weight s-t color separator, or nullopt when an all-white s-t path
/// makes separation impossible.
inline std::optional<SeparatorResult> min_color_separator(const ColoredPlanarGraph& g,
                                                          std::span<const double> weights, int s,
                                                          int t) {
  SeparationOracle oracle(g, s, t);
  return oracle.solve(weights);
}

}  // namespace minpath
