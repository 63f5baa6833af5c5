// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. References are brute force over color subsets.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <sstream>
#include <string>

#include "minpath/bench.hpp"
#include "minpath/exact.hpp"
#include "minpath/gen.hpp"
#include "minpath/lp.hpp"
#include "minpath/round.hpp"
#include "minpath/separator.hpp"
#include "minpath/validate.hpp"
#include "support.hpp"

using namespace minpath;
namespace ts = testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

// Seeded grids up to 8x8 with at most 10 colors; shared by the first two
// criteria.
std::vector<Instance> oracle_corpus() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 0; out.size() < 200; ++seed) {
    Rng rng(seed * 7919 + 1);
    const int w = 3 + static_cast<int>(uniform_below(rng, 6));
    const int h = 3 + static_cast<int>(uniform_below(rng, 6));
    const int m = 1 + static_cast<int>(uniform_below(rng, 10));
    const int size = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(w * h / 3)));
    out.push_back(gen_grid(w, h, m, size, rng()));
  }
  return out;
}

void separator_exactness(const std::vector<Instance>& corpus) {
  const auto start = Clock::now();
  int mismatches = 0;
  int checks = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& in = corpus[i];
    const auto& g = in.graph;
    const int m = g.num_colors;
    Rng rng(i);
    for (int round = 0; round < 2; ++round) {
      std::vector<double> w(static_cast<std::size_t>(m), 1.0);
      if (round == 1) {
        for (double& v : w) v = 0.1 + 0.9 * uniform01(rng);
      }
      const auto fast = min_color_separator(g, w, in.terminals[0].s, in.terminals[0].t);
      const auto slow = exact_min_separator(in, w);
      ++checks;
      const double tol = round == 0 ? 0.0 : 1e-6 * m;
      const bool ok = fast.has_value() == slow.has_value() &&
                      (!fast || (std::abs(fast->weight - slow->value) <= tol &&
                                 verify_separator(g, fast->colors, in.terminals[0].s, in.terminals[0].t)));
      if (!ok) ++mismatches;
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << checks << " oracle calls on " << corpus.size() << " instances, " << mismatches << " mismatches, " << secs
    << " s (limit 60)";
  report("separator_oracle_exactness", mismatches == 0 && secs < 60.0, d.str());
}

void lp_validity(const std::vector<Instance>& corpus) {
  int bad_sweep = 0;
  int above_opt = 0;
  int limit_hits = 0;
  int max_cuts = 0;
  for (const auto& in : corpus) {
    const auto& g = in.graph;
    LpState st;
    try {
      st = solve_hitting_lp(in);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::iteration_limit) ++limit_hits;
      continue;
    }
    max_cuts = std::max(max_cuts, static_cast<int>(st.constraints.size()));
    const auto sep = min_color_separator(g, st.x, in.terminals[0].s, in.terminals[0].t);
    if (sep && sep->weight < 1.0 - 1e-7) ++bad_sweep;
    const int opt = ts::brute_min_color_path(g, in.terminals[0].s, in.terminals[0].t);
    if (lp_lower_bound(st) > opt + 1e-9) ++above_opt;
  }
  std::ostringstream d;
  d << corpus.size() << " instances: " << bad_sweep << " violated sweeps, " << above_opt << " LP > OPT, "
    << limit_hits << " ITERATION_LIMIT, max cuts " << max_cuts;
  report("lp_validity", bad_sweep == 0 && above_opt == 0 && limit_hits == 0, d.str());
}

struct Solved {
  Instance in;
  Solution sol;
};

std::vector<Solved> end_to_end() {
  const auto start = Clock::now();
  std::vector<Solved> out;
  int failures_here = 0;
  int invariant = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed * 104729 + 17);
    const int side = seed < 300 ? 10 : 20;
    const int w = 3 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(side - 2)));
    const int h = 3 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(side - 2)));
    const int m = 1 + static_cast<int>(uniform_below(rng, seed < 300 ? 12 : 40));
    const int size = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, w * h / 6))));
    Instance in = gen_grid(w, h, m, size, rng());
    try {
      Solution sol = solve(in);  // strict mode
      const auto& p = sol.paths.at(0);
      const bool ok = p && p->front() == in.terminals[0].s && p->back() == in.terminals[0].t &&
                      path_colors(in.graph, *p).is_subset_of(sol.colors);
      if (!ok) ++failures_here;
      out.push_back({std::move(in), std::move(sol)});
    } catch (const Error& e) {
      ++failures_here;
      if (e.code() == ErrorCode::invariant_violation) ++invariant;
      if (first.empty()) first = "seed " + std::to_string(seed) + ": " + e.what();
    }
  }
  std::ostringstream d;
  d << "500 instances (up to 20x20, m <= 40): " << failures_here << " failures, " << invariant
    << " INVARIANT_VIOLATION, " << seconds_since(start) << " s";
  if (!first.empty()) d << "; first: " << first;
  report("end_to_end_feasibility", failures_here == 0 && invariant == 0, d.str());
  return out;
}

void approximation(const std::vector<Solved>& solved) {
  int order_bad = 0;
  int checked = 0;
  std::map<double, int> histogram;
  double worst = 0.0;
  auto account = [&](double lp, double opt, double alg) {
    ++checked;
    if (std::ceil(lp - 1e-6) > opt || opt > alg) ++order_bad;
    const double ratio = alg / std::max(opt, 1.0);
    worst = std::max(worst, ratio);
    ++histogram[std::floor(ratio * 4.0) / 4.0];
  };
  for (const auto& s : solved) {
    if (s.in.graph.num_colors > 12) continue;
    const int opt = ts::brute_min_color_path(s.in.graph, s.in.terminals[0].s, s.in.terminals[0].t);
    account(s.sol.lower_bound, opt, s.sol.objective);
  }
  Config cfg;
  cfg.strategy = Strategy::ball_carving;
  for (const auto& row : run_bench(bench_suite("small", 7), cfg)) {
    if (row.opt) account(row.lp, *row.opt, row.alg);
  }
  std::ostringstream d;
  d << checked << " instances with m <= 12, " << order_bad << " order violations, max ratio " << worst
    << " (gate 6); histogram";
  for (const auto& [bucket, count] : histogram) d << " [" << bucket << "]=" << count;
  report("approximation_quality", order_bad == 0 && worst <= 6.0, d.str());
}

// Exact node-weighted distances from `src` by textbook Dijkstra.
std::vector<double> dijkstra(const ColorIntersectionGraph& g, int src) {
  std::vector<double> dist(static_cast<std::size_t>(g.num_nodes()), kInfinity);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > dist[static_cast<std::size_t>(u)]) continue;
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      const double nd = du + 0.5 * (g.d[static_cast<std::size_t>(u)] + g.d[static_cast<std::size_t>(v)]);
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

struct DecompTally {
  int decompositions = 0;
  int partition = 0;
  int diameter = 0;
  int bound = 0;
};

void check(const ColorIntersectionGraph& g, double delta, Strategy s, DecompTally& t) {
  const auto dec = decompose(g, delta, s);
  ++t.decompositions;
  std::vector<int> owner(static_cast<std::size_t>(g.num_nodes()), 0);
  for (int v : dec.cut) ++owner[static_cast<std::size_t>(v)];
  for (const auto& comp : dec.components) {
    for (int v : comp) ++owner[static_cast<std::size_t>(v)];
  }
  if (std::any_of(owner.begin(), owner.end(), [](int c) { return c != 1; })) ++t.partition;
  for (const auto& comp : dec.components) {
    if (comp.size() < 2) continue;
    bool bad = false;
    for (int u : comp) {
      const auto dist = dijkstra(g, u);
      for (int v : comp) bad = bad || dist[static_cast<std::size_t>(v)] > delta + 1e-12;
      if (bad) break;
    }
    if (bad) ++t.diameter;
  }
  if (s == Strategy::ball_carving) {
    double cut_weight = 0.0;
    for (int v : dec.cut) cut_weight += g.d[static_cast<std::size_t>(v)];
    const double limit = 4.0 * std::log(g.num_nodes() + 2.0) / delta * g.total_weight() + 1e-9;
    if (cut_weight > limit || static_cast<double>(dec.cut.size()) > limit) ++t.bound;
  }
}

void decomposition(const std::vector<Solved>& solved) {
  const auto start = Clock::now();
  DecompTally t;
  // Rounding instances: the LP solution's intersection graph.
  for (std::size_t i = 0; i < solved.size(); i += 5) {
    const auto& in = solved[i].in;
    const auto st = solve_hitting_lp(in);
    ColorSet survivors;
    for (Color c = 0; c < in.graph.num_colors; ++c) {
      if (st.x[static_cast<std::size_t>(c)] < 0.1) survivors.insert(c);
    }
    if (survivors.empty()) continue;
    const auto cg = build_color_graph(build_dual(in.graph, faces(in.graph)), survivors, st.x);
    for (auto s : {Strategy::ball_carving, Strategy::kpr_chop}) check(cg, 0.4, s, t);
  }
  // Adversarial shapes.
  Rng rng(99);
  auto random_d = [&](int n, double hi) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (double& v : d) v = hi * uniform01(rng);
    return d;
  };
  for (int n : {10, 100, 2000}) {
    std::vector<Edge> path;
    std::vector<Edge> star;
    for (int i = 0; i + 1 < n; ++i) {
      path.emplace_back(i, i + 1);
      star.emplace_back(0, i + 1);
    }
    for (double hi : {0.05, 0.1, 0.39}) {
      const auto pg = make_color_graph(n, path, random_d(n, hi));
      const auto sg = make_color_graph(n, star, random_d(n, hi));
      for (auto s : {Strategy::ball_carving, Strategy::kpr_chop}) {
        check(pg, 0.4, s, t);
        check(sg, 0.4, s, t);
      }
    }
  }
  for (int side : {5, 20, 44}) {
    std::vector<Edge> edges;
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        if (x + 1 < side) edges.emplace_back(y * side + x, y * side + x + 1);
        if (y + 1 < side) edges.emplace_back(y * side + x, (y + 1) * side + x);
      }
    }
    for (double delta : {0.1, 0.4}) {
      const auto gg = make_color_graph(side * side, edges, random_d(side * side, 0.1));
      for (auto s : {Strategy::ball_carving, Strategy::kpr_chop}) check(gg, delta, s, t);
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << t.decompositions << " decompositions: " << t.partition << " partition errors, " << t.diameter
    << " diameter violations, " << t.bound << " cut bound violations, " << secs << " s (limit 120)";
  report("decomposition", t.partition == 0 && t.diameter == 0 && t.bound == 0 && secs < 120.0, d.str());
}

void hitting_equivalence() {
  int mismatches = 0;
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 100; ++seed) {
    const auto in = ts::random_grid(seed + 40000, 8, 10);
    ++instances;
    const auto& g = in.graph;
    const int s = in.terminals[0].s;
    const int t = in.terminals[0].t;
    const auto seps = ts::all_separators(g, s, t);
    Rng rng(seed);
    for (int k = 0; k < 50; ++k) {
      const std::uint64_t mask = uniform_below(rng, std::uint64_t{1} << g.num_colors);
      bool hits = true;
      for (std::uint64_t sep : seps) hits = hits && (sep & mask) != 0;
      if (extract_path(g, ColorSet::from_mask(mask), s, t).has_value() != hits) ++mismatches;
    }
  }
  report("hitting_equivalence", mismatches == 0,
         std::to_string(instances) + " instances x 50 subsets, " + std::to_string(mismatches) + " mismatches");
}

void steiner_prize() {
  int exact_bad = 0;
  int below_lp = 0;
  int forfeit_instances = 0;
  int errors = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto in = ts::random_grid(seed + 50000, 7, 10);
    Rng rng(seed);
    const int n = in.graph.num_vertices();
    const int k = 1 + static_cast<int>(uniform_below(rng, 3));
    // Half the instances use prizes below 1/2, which the LP prefers to pay.
    const double scale = seed % 2 == 0 ? 0.45 : 3.0;
    in.terminals[0].prize = scale * (0.1 + 0.9 * uniform01(rng));
    for (int i = 1; i < k; ++i) {
      const int s = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      in.terminals.push_back({s, t, uniform_below(rng, 4) == 0 ? kInfinity : scale * (0.1 + 0.9 * uniform01(rng))});
    }
    try {
      const double opt = ts::brute_prize(in);
      if (std::abs(exact_prize(in).value - opt) > 1e-9) ++exact_bad;
      const auto sol = solve_prize(in);
      if (sol.objective < sol.lower_bound - 1e-6) ++below_lp;
      bool forfeited = false;
      for (std::size_t i = 0; i < in.terminals.size(); ++i) {
        forfeited = forfeited || (sol.forfeited(i) && in.terminals[i].prize < 1.0);
      }
      if (forfeited) ++forfeit_instances;
    } catch (const Error&) {
      ++errors;
    }
  }
  std::ostringstream d;
  d << "100 instances: " << exact_bad << " exact mismatches, " << below_lp << " objective < LP, " << errors
    << " errors, forfeit rule used on " << forfeit_instances << " (need 20)";
  report("steiner_prize", exact_bad == 0 && below_lp == 0 && errors == 0 && forfeit_instances >= 20, d.str());
}

void hardness() {
  int structural = 0;
  int exact_bad = 0;
  int built = 0;
  int tiny = 0;
  for (std::uint64_t seed = 0; built < 100; ++seed) {
    const HardnessParams params{8, 2, 0.5, 0.5, 2 + static_cast<int>(seed % 9)};
    const auto hg = gen_random_hypergraph(params.n, 0.5, params.r, seed);
    Instance in;
    try {
      in = gen_diamond_hardness(hg, params, seed + 1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::empty_group) throw;
      continue;
    }
    ++built;
    const auto& g = in.graph;
    const int ell = params.ell();
    bool ok = in.terminals[0].s == 0 && in.terminals[0].t == ell;
    const auto adj = adjacency(g);
    for (int v = ell + 1; v < g.num_vertices(); ++v) {
      const auto& nb = adj[static_cast<std::size_t>(v)];
      ok = ok && nb.size() == 2 && nb[0] <= ell && nb[1] <= ell && std::abs(nb[0] - nb[1]) == 1;
    }
    for (int v = 0; v <= ell; ++v) ok = ok && g.colors[static_cast<std::size_t>(v)].empty();
    try {
      faces(g);
    } catch (const Error&) {
      ok = false;
    }
    // A color on two diamond vertices is split by the spine.
    std::vector<int> seen(static_cast<std::size_t>(g.num_colors), 0);
    for (const auto& cs : g.colors) {
      for (Color c : cs) ++seen[static_cast<std::size_t>(c)];
    }
    const bool repeated = std::any_of(seen.begin(), seen.end(), [](int c) { return c > 1; });
    if (repeated) ok = ok && !is_color_connected(g);
    const auto joined = add_color_connector(in);
    ok = ok && is_color_connected(joined.graph) && !joined.graph.embedded &&
         joined.graph.num_vertices() == g.num_vertices() + 1;
    if (!ok) ++structural;
    ++tiny;
    if (exact_min_color_path(in).value != ts::brute_min_color_path(g, 0, ell)) ++exact_bad;
  }
  std::ostringstream d;
  d << built << " instances (n = 8, r = 2): " << structural << " structural failures, " << exact_bad << "/" << tiny
    << " exact mismatches";
  report("hardness_generator", structural == 0 && exact_bad == 0, d.str());
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int raw = ::pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

void determinism() {
  const std::string cmd = std::string(MINPATH_CLI) + " bench --suite small --seed 7 2>/dev/null";
  int a_status = 0;
  int b_status = 0;
  const auto a = capture(cmd, a_status);
  const auto b = capture(cmd, b_status);
  const bool ok = a_status == 0 && b_status == 0 && !a.empty() && a == b;
  report("determinism", ok,
         "two bench runs, " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different"));
}

}  // namespace

int main() {
  const auto corpus = oracle_corpus();
  separator_exactness(corpus);
  lp_validity(corpus);
  const auto solved = end_to_end();
  approximation(solved);
  decomposition(solved);
  hitting_equivalence();
  steiner_prize();
  hardness();
  determinism();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
