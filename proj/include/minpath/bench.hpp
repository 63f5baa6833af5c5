#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/exact.hpp"
#include "minpath/gen.hpp"
#include "minpath/round.hpp"

namespace minpath {

struct BenchCase {
  std::string name;
  Instance instance;
};

struct BenchRow {
  std::string name;
  int vertices = 0;
  int colors = 0;
  std::optional<double> opt;  // exact optimum when m is small enough
  double lp = 0.0;
  double alg = 0.0;
  double ratio = 0.0;  // alg / max(opt, 1) when opt is known, else alg / max(lp, 1)
  int lp_cuts = 0;
  double millis = 0.0;
};

/// Grid instances of growing size; every size gets two seeds derived from
/// `seed` so reruns with the same seed see the same suite.
inline std::vector<BenchCase> bench_suite(const std::string& suite, std::uint64_t seed) {
  struct Shape {
    int w, h, obstacles, size;
  };
  std::vector<Shape> shapes;
  if (suite == "small") {
    shapes = {{5, 5, 3, 4}, {6, 6, 5, 5}, {7, 7, 6, 6}, {8, 8, 8, 7}, {8, 8, 10, 8}, {10, 10, 12, 10}};
  } else if (suite == "medium") {
    shapes = {{12, 12, 15, 12}, {15, 15, 20, 15}, {20, 20, 30, 20}, {20, 20, 40, 25}};
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");
  }
  Rng rng(seed);
  std::vector<BenchCase> out;
  for (const auto& s : shapes) {
    for (int rep = 0; rep < 2; ++rep) {
      const std::uint64_t inst_seed = rng();
      out.push_back({std::to_string(s.w) + "x" + std::to_string(s.h) + "-m" + std::to_string(s.obstacles) + "-" +
                         std::to_string(rep),
                     gen_grid(s.w, s.h, s.obstacles, s.size, inst_seed)});
    }
  }
  return out;
}

inline std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, const Config& cfg, int exact_limit = 12) {
  std::vector<BenchRow> rows;
  for (const auto& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    BenchRow row;
    row.name = c.name;
    row.vertices = c.instance.graph.num_vertices();
    row.colors = c.instance.graph.num_colors;
    const Solution sol = solve(c.instance, cfg);
    row.lp = sol.lower_bound;
    row.alg = sol.objective;
    row.lp_cuts = sol.lp_cuts;
    if (row.colors <= exact_limit) row.opt = exact_min_color_path(c.instance, exact_limit).value;
    row.ratio = row.alg / std::max(row.opt.value_or(row.lp), 1.0);
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace minpath
