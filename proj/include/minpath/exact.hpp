#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"
#include "minpath/separator.hpp"

namespace minpath {

struct ExactResult {
  double value = 0.0;
  ColorSet witness;
  std::vector<std::optional<std::vector<int>>> paths;  // nullopt: forfeited
};

namespace detail {

inline void check_limit(int m, int limit) {
  if (m > limit || m > 62) {
    throw Error(ErrorCode::limit_exceeded,
                "exact search needs " + std::to_string(m) + " colors <= limit " + std::to_string(limit));
  }
}

inline std::vector<std::uint64_t> vertex_masks(const ColoredPlanarGraph& g) {
  std::vector<std::uint64_t> out;
  out.reserve(g.colors.size());
  for (const auto& cs : g.colors) out.push_back(cs.mask());
  return out;
}

inline std::vector<int> path_within(const std::vector<std::vector<int>>& adj, const std::vector<std::uint64_t>& vm,
                                    std::uint64_t allowed, int s, int t) {
  return bfs_path(adj, s, t, [&](int v) { return (vm[static_cast<std::size_t>(v)] & ~allowed) == 0; });
}

}  // namespace detail

/// Fewest colors on an s-t path, by best-first search over (vertex, color
/// set) states. A state is dropped when its vertex was already reached with a
/// subset of its colors. Works on any graph (no embedding needed).
inline ExactResult exact_min_color_path(const Instance& in, int limit_m = 15) {
  const auto& g = in.graph;
  detail::check_limit(g.num_colors, limit_m);
  if (in.terminals.size() != 1) throw Error(ErrorCode::invalid_argument, "exact path search needs one pair");
  const int s = in.terminals[0].s;
  const int t = in.terminals[0].t;
  const auto adj = adjacency(g);
  const auto vm = detail::vertex_masks(g);

  struct State {
    int v;
    std::uint64_t mask;
    int parent;
  };
  std::vector<State> states;
  std::vector<std::vector<std::uint64_t>> kept(static_cast<std::size_t>(g.num_vertices()));
  using Key = std::tuple<int, std::uint64_t, int, int>;  // (|mask|, mask, vertex, state)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;

  auto dominated = [&](int v, std::uint64_t mask) {
    for (std::uint64_t k : kept[static_cast<std::size_t>(v)]) {
      if ((k & ~mask) == 0) return true;
    }
    return false;
  };
  auto push = [&](int v, std::uint64_t mask, int parent) {
    if (dominated(v, mask)) return;
    auto& list = kept[static_cast<std::size_t>(v)];
    std::erase_if(list, [&](std::uint64_t k) { return (mask & ~k) == 0; });
    list.push_back(mask);
    states.push_back({v, mask, parent});
    const int id = static_cast<int>(states.size()) - 1;
    open.emplace(std::popcount(mask), mask, v, id);
  };

  push(s, vm[static_cast<std::size_t>(s)], -1);
  while (!open.empty()) {
    const auto [cost, mask, v, id] = open.top();
    open.pop();
    // Skip states superseded after they were queued.
    const auto& list = kept[static_cast<std::size_t>(v)];
    if (std::find(list.begin(), list.end(), mask) == list.end()) continue;
    if (v == t) {
      ExactResult out;
      out.value = cost;
      out.witness = ColorSet::from_mask(mask);
      std::vector<int> path;
      for (int k = id; k != -1; k = states[static_cast<std::size_t>(k)].parent) {
        path.push_back(states[static_cast<std::size_t>(k)].v);
      }
      std::reverse(path.begin(), path.end());
      out.paths.emplace_back(std::move(path));
      return out;
    }
    for (int w : adj[static_cast<std::size_t>(v)]) push(w, mask | vm[static_cast<std::size_t>(w)], id);
  }
  throw Error(ErrorCode::disconnected, "terminals lie in different components");
}

/// Minimum-weight separator by enumerating every color subset. Ties go to
/// the lexicographically smallest set. nullopt when nothing separates.
inline std::optional<ExactResult> exact_min_separator(const ColoredPlanarGraph& g, std::span<const double> weights,
                                                      int s, int t, int limit_m = 15) {
  const int m = g.num_colors;
  detail::check_limit(m, limit_m);
  const auto adj = adjacency(g);
  const auto vm = detail::vertex_masks(g);
  std::optional<ExactResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    ColorSet cand = ColorSet::from_mask(mask);
    const double w = cand.weight(weights);
    if (best) {
      if (w > best->value + 1e-12) continue;
      if (w >= best->value - 1e-12 && !(cand < best->witness)) continue;
    }
    // The path may only use vertices untouched by the candidate.
    const std::uint64_t allowed = ~mask;
    if (!detail::path_within(adj, vm, allowed, s, t).empty()) continue;
    best = ExactResult{w, std::move(cand), {}};
  }
  return best;
}

inline std::optional<ExactResult> exact_min_separator(const Instance& in, std::span<const double> weights,
                                                      int limit_m = 15) {
  const auto& p = in.terminals.at(0);
  return exact_min_separator(in.graph, weights, p.s, p.t, limit_m);
}

/// Exact prize-collecting optimum. For a fixed color set the best choice is to
/// forfeit exactly the pairs it cannot connect, so enumerating color subsets
/// covers every (colors, forfeits) combination worth considering. `limit`
/// bounds m + k.
inline ExactResult exact_prize(const Instance& in, int limit = 20) {
  const auto& g = in.graph;
  const int m = g.num_colors;
  const int k = static_cast<int>(in.terminals.size());
  if (m + k > limit || m > 62) {
    throw Error(ErrorCode::limit_exceeded,
                "exact prize search needs m + k = " + std::to_string(m + k) + " <= limit " + std::to_string(limit));
  }
  const auto adj = adjacency(g);
  const auto vm = detail::vertex_masks(g);
  std::optional<ExactResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double value = std::popcount(mask);
    if (best && value > best->value + 1e-12) continue;
    std::vector<std::optional<std::vector<int>>> paths(static_cast<std::size_t>(k));
    bool feasible = true;
    for (int i = 0; i < k && feasible; ++i) {
      const auto& p = in.terminals[static_cast<std::size_t>(i)];
      auto path = detail::path_within(adj, vm, mask, p.s, p.t);
      if (!path.empty()) {
        paths[static_cast<std::size_t>(i)] = std::move(path);
      } else if (p.prize == kInfinity) {
        feasible = false;
      } else {
        value += p.prize;
      }
    }
    if (!feasible) continue;
    ColorSet cs = ColorSet::from_mask(mask);
    if (best && (value > best->value + 1e-12 || (value >= best->value - 1e-12 && !(cs < best->witness)))) continue;
    best = ExactResult{value, std::move(cs), std::move(paths)};
  }
  if (!best) throw Error(ErrorCode::disconnected, "some must-connect pair has no path");
  return *best;
}

}  // namespace minpath
