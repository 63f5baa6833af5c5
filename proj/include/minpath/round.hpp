#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minpath/decomp.hpp"
#include "minpath/error.hpp"
#include "minpath/instance.hpp"
#include "minpath/lp.hpp"
#include "minpath/planar.hpp"

namespace minpath {

enum class Mode { strict, repair };

struct Config {
  double epsilon = 0.1;
  double tolerance = 1e-7;
  Strategy strategy = Strategy::ball_carving;
  Mode mode = Mode::strict;
  int max_cuts = 0;
  unsigned long long seed = 0;

  double delta() const { return 0.5 - epsilon; }

  void check() const {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
      throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 0.5)");
    }
    if (!(tolerance > 0.0 && tolerance <= 1e-3)) {
      throw Error(ErrorCode::invalid_argument, "tolerance must lie in (0, 1e-3]");
    }
  }
};

struct Rounding {
  ColorSet colors;
  ColorSet pre_rounded;  // x_j >= epsilon
  ColorSet cut;          // decomposition cut over the other colors
  Decomposition decomposition;
};

/// Rounds a fractional hitting vector: keep every color with x_j >= epsilon,
/// then decompose the intersection graph of the remaining colors (node
/// weight x_j) with delta = 1/2 - epsilon and add its cut.
inline Rounding round_hitting(const ColoredPlanarGraph& g, std::span<const double> x, const Config& cfg = {}) {
  cfg.check();
  Rounding out;
  std::vector<Color> rest;
  for (Color c = 0; c < g.num_colors; ++c) {
    if (x[static_cast<std::size_t>(c)] >= cfg.epsilon) {
      out.pre_rounded.insert(c);
    } else {
      rest.push_back(c);
    }
  }
  ColorSet survivors(std::move(rest));
  if (!survivors.empty()) {
    const DualColoredGraph dual = build_dual(g, faces(g));
    const auto cg = build_color_graph(dual, survivors, x);
    out.decomposition = decompose(cg, cfg.delta(), cfg.strategy);
    out.cut = out.decomposition.cut_colors(cg);
  }
  out.colors = out.pre_rounded | out.cut;
  return out;
}

inline Rounding round_hitting(const Instance& in, const LpState& lp, const Config& cfg = {}) {
  return round_hitting(in.graph, lp.x, cfg);
}

/// Fewest-edge s-t path through vertices whose colors all lie in `allowed`;
/// nullopt when none exists (allowed does not hit every separator).
inline std::optional<std::vector<int>> extract_path(const ColoredPlanarGraph& g, const ColorSet& allowed, int s,
                                                    int t) {
  const auto adj = adjacency(g);
  auto path = bfs_path(adj, s, t, [&](int v) { return g.colors[static_cast<std::size_t>(v)].is_subset_of(allowed); });
  if (path.empty()) return std::nullopt;
  return path;
}

/// Colors used by a vertex path.
inline ColorSet path_colors(const ColoredPlanarGraph& g, const std::vector<int>& path) {
  ColorSet out;
  for (int v : path) out |= g.colors[static_cast<std::size_t>(v)];
  return out;
}

struct Solution {
  ColorSet colors;
  std::vector<std::optional<std::vector<int>>> paths;  // nullopt: forfeited
  double objective = 0.0;
  double lower_bound = 0.0;
  double ratio = 0.0;
  bool repaired = false;
  ColorSet base_colors;
  ColorSet pre_rounded;
  ColorSet cut;
  double forfeited_prize = 0.0;
  int lp_iterations = 0;
  int lp_cuts = 0;

  bool forfeited(std::size_t pair) const { return !paths[pair].has_value(); }
};

namespace detail {

/// Adds colors until s reaches t: each step unlocks the frontier vertex
/// needing the fewest new colors (lowest id on ties).
inline std::vector<int> repair_path(const ColoredPlanarGraph& g, ColorSet& colors, int s, int t) {
  const auto adj = adjacency(g);
  for (;;) {
    auto ok = [&](int v) { return g.colors[static_cast<std::size_t>(v)].is_subset_of(colors); };
    auto path = bfs_path(adj, s, t, ok);
    if (!path.empty()) return path;
    std::vector<char> reach(static_cast<std::size_t>(g.num_vertices()), 0);
    std::vector<int> stack;
    if (ok(s)) {
      reach[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (reach[static_cast<std::size_t>(w)] || !ok(w)) continue;
        reach[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
    int pick = -1;
    std::size_t fewest = 0;
    auto consider = [&](int v) {
      const std::size_t missing = (g.colors[static_cast<std::size_t>(v)] - colors).size();
      if (pick < 0 || missing < fewest || (missing == fewest && v < pick)) {
        pick = v;
        fewest = missing;
      }
    };
    if (!ok(s)) {
      consider(s);
    } else {
      for (int u = 0; u < g.num_vertices(); ++u) {
        if (!reach[static_cast<std::size_t>(u)]) continue;
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (!reach[static_cast<std::size_t>(w)]) consider(w);
        }
      }
    }
    if (pick < 0) throw Error(ErrorCode::disconnected, "terminals lie in different components");
    colors |= g.colors[static_cast<std::size_t>(pick)];
  }
}

inline void require_connected(const Instance& in) {
  const auto adj = adjacency(in.graph);
  for (std::size_t k = 0; k < in.terminals.size(); ++k) {
    const auto& p = in.terminals[k];
    if (bfs_path(adj, p.s, p.t, [](int) { return true; }).empty()) {
      throw Error(ErrorCode::disconnected, "pair " + std::to_string(k) + " has no path in the graph");
    }
  }
}

/// Extracts a path per listed pair from `colors`, repairing or failing as the
/// mode says.
inline void extract_all(const ColoredPlanarGraph& g, const std::vector<TerminalPair>& pairs,
                        const std::vector<char>& skip, const Config& cfg, Solution& sol) {
  sol.paths.assign(pairs.size(), std::nullopt);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (skip[k]) continue;
    auto path = extract_path(g, sol.colors, pairs[k].s, pairs[k].t);
    if (!path) {
      if (cfg.mode == Mode::strict) {
        throw Error(ErrorCode::invariant_violation,
                    "rounded colors do not hit every separator of pair " + std::to_string(k));
      }
      sol.repaired = true;
      path = repair_path(g, sol.colors, pairs[k].s, pairs[k].t);
    }
    sol.paths[k] = std::move(*path);
  }
}

inline void check_paths(const ColoredPlanarGraph& g, const Solution& sol) {
  for (const auto& p : sol.paths) {
    if (p && !path_colors(g, *p).is_subset_of(sol.colors)) {
      throw Error(ErrorCode::invariant_violation, "path uses a color outside the solution");
    }
  }
}

inline Solution solve_connected(const Instance& in, const Config& cfg) {
  cfg.check();
  for (const auto& p : in.terminals) {
    if (p.prize != kInfinity) {
      throw Error(ErrorCode::invalid_argument, "finite prizes need solve_prize");
    }
  }
  require_connected(in);
  const NormalizedInstance norm = normalize_terminals(in);
  const LpState lp = solve_hitting_lp(norm.instance, {cfg.tolerance, cfg.max_cuts});
  const Rounding r = round_hitting(norm.instance.graph, lp.x, cfg);

  Solution sol;
  sol.colors = r.colors;
  sol.pre_rounded = r.pre_rounded;
  sol.cut = r.cut;
  sol.base_colors = norm.base_colors;
  sol.lp_iterations = lp.iterations;
  sol.lp_cuts = static_cast<int>(lp.constraints.size());
  extract_all(norm.instance.graph, in.terminals, std::vector<char>(in.terminals.size(), 0), cfg, sol);
  sol.colors |= norm.base_colors;
  check_paths(in.graph, sol);
  sol.objective = static_cast<double>(sol.colors.size());
  sol.lower_bound = lp_lower_bound(lp) + static_cast<double>(norm.base_colors.size());
  sol.ratio = sol.objective / std::max(sol.lower_bound, 1.0);
  return sol;
}

}  // namespace detail

/// Min-color path for a single pair (several pairs are treated as the
/// Steiner problem).
inline Solution solve(const Instance& in, const Config& cfg = {}) { return detail::solve_connected(in, cfg); }

/// Every pair must be connected; one LP over all pairs, one rounding.
inline Solution solve_steiner(const Instance& in, const Config& cfg = {}) { return detail::solve_connected(in, cfg); }

/// Prize-collecting variant: pairs with y_k >= 1/2 are forfeited, the rest are
/// connected by rounding 2x (or x itself when no connected pair carries a
/// positive y, which keeps the all-infinite case identical to solve).
inline Solution solve_prize(const Instance& in, const Config& cfg = {}) {
  cfg.check();
  detail::require_connected(in);
  const LpState lp = solve_hitting_lp(in, {cfg.tolerance, cfg.max_cuts});
  const std::size_t k = in.terminals.size();

  Solution sol;
  sol.lp_iterations = lp.iterations;
  sol.lp_cuts = static_cast<int>(lp.constraints.size());
  std::vector<char> forfeit(k, 0);
  bool scaled = false;
  bool any_left = false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = in.terminals[i];
    if (p.prize != kInfinity && lp.y[i] >= 0.5) {
      forfeit[i] = 1;
      sol.forfeited_prize += p.prize;
    } else {
      any_left = true;
      if (lp.y[i] > 1e-9) scaled = true;
    }
  }

  if (any_left) {
    std::vector<double> xr = lp.x;
    if (scaled) {
      for (double& v : xr) v = std::min(1.0, 2.0 * v);
    }
    const Rounding r = round_hitting(in.graph, xr, cfg);
    sol.colors = r.colors;
    sol.pre_rounded = r.pre_rounded;
    sol.cut = r.cut;
  }
  detail::extract_all(in.graph, in.terminals, forfeit, cfg, sol);
  detail::check_paths(in.graph, sol);
  sol.objective = static_cast<double>(sol.colors.size()) + sol.forfeited_prize;
  sol.lower_bound = lp_lower_bound(lp);
  sol.ratio = sol.objective / std::max(sol.lower_bound, 1.0);
  if (sol.objective < sol.lower_bound - 1e-6) {
    throw Error(ErrorCode::invariant_violation, "prize objective below the LP bound");
  }
  return sol;
}

}  // namespace minpath
