#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"

namespace minpath {

// The standard distributions are implementation-defined, so generators draw
// from the raw engine output to stay identical across platforms.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Clockwise rotation system of a straight-line drawing.
inline std::vector<std::vector<int>> rotation_from_coordinates(const std::vector<std::pair<double, double>>& xy,
                                                               const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<double, int>>> around(xy.size());
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const auto [u, v] = edges[static_cast<std::size_t>(e)];
    const auto& pu = xy[static_cast<std::size_t>(u)];
    const auto& pv = xy[static_cast<std::size_t>(v)];
    around[static_cast<std::size_t>(u)].emplace_back(std::atan2(pv.second - pu.second, pv.first - pu.first), e);
    around[static_cast<std::size_t>(v)].emplace_back(std::atan2(pu.second - pv.second, pu.first - pv.first), e);
  }
  std::vector<std::vector<int>> rot(xy.size());
  for (std::size_t v = 0; v < xy.size(); ++v) {
    auto& list = around[v];
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [angle, e] : list) rot[v].push_back(e);
  }
  return rot;
}

/// width x height grid, vertex y * width + x, s top-left and t bottom-right.
/// Obstacle i gets color i and grows from a random cell by repeatedly adding
/// a uniformly chosen neighbouring cell; obstacles may overlap.
inline Instance gen_grid(int width, int height, int num_obstacles, int obstacle_size, std::uint64_t seed) {
  if (width < 2 || height < 2) throw Error(ErrorCode::invalid_argument, "grid dimensions must be >= 2");
  if (num_obstacles < 0 || obstacle_size < 1) throw Error(ErrorCode::invalid_argument, "obstacle sizes must be >= 1");
  Rng rng(seed);
  const int n = width * height;
  Instance in;
  auto& g = in.graph;
  g.num_colors = num_obstacles;
  g.colors.resize(static_cast<std::size_t>(n));
  std::vector<std::pair<double, double>> xy(static_cast<std::size_t>(n));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int v = y * width + x;
      xy[static_cast<std::size_t>(v)] = {x, -y};
      if (x + 1 < width) g.edges.emplace_back(v, v + 1);
      if (y + 1 < height) g.edges.emplace_back(v, v + width);
    }
  }
  g.rotation = rotation_from_coordinates(xy, g.edges);
  const auto adj = adjacency(g);

  for (int c = 0; c < num_obstacles; ++c) {
    std::vector<char> in_obstacle(static_cast<std::size_t>(n), 0);
    std::vector<int> cells{static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)))};
    in_obstacle[static_cast<std::size_t>(cells[0])] = 1;
    while (static_cast<int>(cells.size()) < obstacle_size) {
      std::vector<int> frontier;
      for (int u : cells) {
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (!in_obstacle[static_cast<std::size_t>(w)]) frontier.push_back(w);
        }
      }
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      if (frontier.empty()) break;
      const int pick = frontier[uniform_below(rng, frontier.size())];
      in_obstacle[static_cast<std::size_t>(pick)] = 1;
      cells.push_back(pick);
    }
    for (int v : cells) g.colors[static_cast<std::size_t>(v)].insert(c);
  }
  in.terminals.push_back({0, n - 1, kInfinity});
  return in;
}

struct Hypergraph {
  int n = 0;
  int r = 0;
  std::vector<std::vector<int>> hyperedges;
};

inline double binomial(int n, int r) {
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Each r-subset of [n], in lexicographic order, is kept with probability p.
inline Hypergraph gen_random_hypergraph(int n, double p, int r, std::uint64_t seed) {
  if (r < 1 || r > n) throw Error(ErrorCode::invalid_argument, "need 1 <= r <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_argument, "p must lie in [0, 1]");
  if (n > 30 || binomial(n, r) > 5e6) {
    throw Error(ErrorCode::size_limit, "C(" + std::to_string(n) + ", " + std::to_string(r) + ") subsets is too many");
  }
  Rng rng(seed);
  Hypergraph hg{n, r, {}};
  std::vector<int> subset(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i;
  for (;;) {
    if (uniform01(rng) < p) hg.hyperedges.push_back(subset);
    int i = r - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j) - 1] + 1;
  }
  return hg;
}

struct HardnessParams {
  int n = 0;
  int r = 2;
  double alpha = 0.5;
  double beta = 0.5;
  int k = 1;

  double q() const { return std::pow(static_cast<double>(k), 1.0 + beta); }
  double p() const { return std::pow(static_cast<double>(n), alpha - (r - 1)); }
  /// Number of groups; q / ((r + 1) ln n) rounded to nearest, at least 1.
  int ell() const {
    const double raw = q() / ((r + 1) * std::log(static_cast<double>(n)));
    return std::max(1, static_cast<int>(std::lround(raw)));
  }

  void check() const {
    if (n < 2 || r < 1 || k < 1) throw Error(ErrorCode::invalid_argument, "need n >= 2, r >= 1, k >= 1");
    if (!(alpha > 0.0 && alpha < r - 1) || !(beta > 0.0 && beta < r - 1)) {
      throw Error(ErrorCode::invalid_argument, "alpha and beta must lie in (0, r - 1)");
    }
  }
};

/// Diamond path with ell + 1 spine vertices. Each hyperedge goes to a
/// uniformly random group i and becomes a degree-2 vertex between spine
/// vertices i and i + 1 whose colors are the hyperedge's members.
inline Instance gen_diamond_hardness(const Hypergraph& hg, const HardnessParams& params, std::uint64_t seed) {
  params.check();
  const int ell = params.ell();
  Rng rng(seed);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(ell));
  for (int e = 0; e < static_cast<int>(hg.hyperedges.size()); ++e) {
    groups[uniform_below(rng, static_cast<std::uint64_t>(ell))].push_back(e);
  }
  for (int i = 0; i < ell; ++i) {
    if (groups[static_cast<std::size_t>(i)].empty()) {
      throw Error(ErrorCode::empty_group, "group " + std::to_string(i) + " received no hyperedge");
    }
  }

  Instance in;
  auto& g = in.graph;
  g.num_colors = hg.n;
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i <= ell; ++i) {
    g.colors.emplace_back();
    xy.emplace_back(2.0 * i, 0.0);
  }
  for (int i = 0; i < ell; ++i) {
    const auto& members = groups[static_cast<std::size_t>(i)];
    const double mid = (static_cast<double>(members.size()) - 1.0) / 2.0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      const int v = g.num_vertices();
      g.colors.emplace_back(hg.hyperedges[static_cast<std::size_t>(members[j])]);
      xy.emplace_back(2.0 * i + 1.0, static_cast<double>(j) - mid);
      g.edges.emplace_back(i, v);
      g.edges.emplace_back(v, i + 1);
    }
  }
  g.rotation = rotation_from_coordinates(xy, g.edges);
  in.terminals.push_back({0, ell, kInfinity});
  return in;
}

/// Adds one vertex carrying every color, adjacent to all others. The result
/// is color-connected but in general not planar, so it carries no embedding.
inline Instance add_color_connector(const Instance& in) {
  Instance out = in;
  auto& g = out.graph;
  const int hub = g.num_vertices();
  g.colors.push_back(ColorSet::range(g.num_colors));
  for (int v = 0; v < hub; ++v) g.edges.emplace_back(v, hub);
  g.rotation.clear();
  g.embedded = false;
  return out;
}

}  // namespace minpath
