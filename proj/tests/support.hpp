#pragma once

// Shared fixtures and brute-force references for the test suite. The
// references deliberately avoid the library's algorithms: plain BFS and
// subset enumeration over bitmasks.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "minpath/decomp.hpp"
#include "minpath/gen.hpp"
#include "minpath/instance.hpp"
#include "minpath/io.hpp"

namespace testing_support {

using namespace minpath;

inline Instance fixture(const std::string& name) {
  return load_instance(std::string(MINPATH_TEST_DATA) + "/" + name);
}

inline std::vector<std::uint64_t> masks_of(const ColoredPlanarGraph& g) {
  std::vector<std::uint64_t> out;
  for (const auto& cs : g.colors) {
    std::uint64_t m = 0;
    for (Color c : cs) m |= std::uint64_t{1} << c;
    out.push_back(m);
  }
  return out;
}

/// Can s reach t through vertices whose colors all lie in `allowed`?
inline bool reachable(const ColoredPlanarGraph& g, std::uint64_t allowed, int s, int t) {
  const auto vm = masks_of(g);
  const int n = g.num_vertices();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  auto open = [&](int v) { return (vm[static_cast<std::size_t>(v)] & ~allowed) == 0; };
  if (!open(s) || !open(t)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{s};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == t) return true;
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(w)] || !open(w)) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      stack.push_back(w);
    }
  }
  return false;
}

/// Every color subset whose host vertices disconnect s from t.
inline std::vector<std::uint64_t> all_separators(const ColoredPlanarGraph& g, int s, int t) {
  std::vector<std::uint64_t> out;
  const std::uint64_t full = (std::uint64_t{1} << g.num_colors) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    if (!reachable(g, full & ~mask, s, t)) out.push_back(mask);
  }
  return out;
}

/// Minimum weight over all separators; negative when there is none.
inline double brute_min_separator(const ColoredPlanarGraph& g, const std::vector<double>& w, int s, int t) {
  double best = -1.0;
  for (std::uint64_t mask : all_separators(g, s, t)) {
    double sum = 0.0;
    for (int c = 0; c < g.num_colors; ++c) {
      if (mask >> c & 1U) sum += w[static_cast<std::size_t>(c)];
    }
    if (best < 0.0 || sum < best) best = sum;
  }
  return best;
}

/// Fewest colors C such that some s-t path only uses colors in C.
inline int brute_min_color_path(const ColoredPlanarGraph& g, int s, int t) {
  int best = -1;
  const std::uint64_t full = (std::uint64_t{1} << g.num_colors) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (best >= 0 && size >= best) continue;
    if (reachable(g, mask, s, t)) best = size;
  }
  return best;
}

/// Exact prize optimum by enumerating color sets and forfeit sets.
inline double brute_prize(const Instance& in) {
  const auto& g = in.graph;
  const int k = static_cast<int>(in.terminals.size());
  double best = kInfinity;
  const std::uint64_t full = (std::uint64_t{1} << g.num_colors) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    for (std::uint32_t forfeit = 0; forfeit < (1U << k); ++forfeit) {
      double value = std::popcount(mask);
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        const auto& p = in.terminals[static_cast<std::size_t>(i)];
        if (forfeit >> i & 1U) {
          if (p.prize == kInfinity) ok = false;
          value += p.prize;
        } else if (!reachable(g, mask, p.s, p.t)) {
          ok = false;
        }
      }
      if (ok && value < best) best = value;
    }
  }
  return best;
}

/// All-pairs node-weighted distances by Floyd-Warshall.
inline std::vector<std::vector<double>> all_pairs(const ColorIntersectionGraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.num_nodes());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInfinity));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0.0;
    for (int v : g.adj[u]) d[u][static_cast<std::size_t>(v)] = 0.5 * (g.d[u] + g.d[static_cast<std::size_t>(v)]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInfinity) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

/// Random small grid instance: sizes and obstacle counts drawn from `seed`.
inline Instance random_grid(std::uint64_t seed, int max_side, int max_colors) {
  Rng rng(seed);
  const int w = 3 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_side - 2)));
  const int h = 3 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_side - 2)));
  const int m = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_colors)));
  const int size = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, w * h / 4))));
  return gen_grid(w, h, m, size, rng());
}

}  // namespace testing_support
