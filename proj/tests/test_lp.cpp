#include <set>

#include <gtest/gtest.h>

#include "minpath/gen.hpp"
#include "minpath/lp.hpp"
#include "support.hpp"

using namespace minpath;
using testing_support::fixture;

TEST(HittingLp, WhitePathGivesZero) {
  const auto in = gen_grid(4, 4, 0, 1, 0);
  const auto st = solve_hitting_lp(in);
  EXPECT_DOUBLE_EQ(lp_lower_bound(st), 0.0);
  EXPECT_TRUE(st.constraints.empty());
}

TEST(HittingLp, DiamondValueOne) {
  const auto st = solve_hitting_lp(fixture("diamond.json"));
  EXPECT_NEAR(lp_lower_bound(st), 1.0, 1e-9);
  EXPECT_NEAR(st.x[0] + st.x[1], 1.0, 1e-9);
  ASSERT_EQ(st.constraints.size(), 1U);
  EXPECT_EQ(st.constraints[0].colors, (ColorSet{0, 1}));
}

TEST(HittingLp, SerialChainValueOne) {
  const auto st = solve_hitting_lp(fixture("chain.json"));
  EXPECT_NEAR(lp_lower_bound(st), 1.0, 1e-9);
  EXPECT_NEAR(st.x[0], 1.0, 1e-9);
}

TEST(HittingLp, TwoBarrierFigure) {
  // {3} and {1, 2} are disjoint separators, and x = (0, 1/2, 1/2, 1) meets
  // every separator, so the optimum is exactly 2.
  const auto st = solve_hitting_lp(fixture("fig2.json"));
  EXPECT_NEAR(lp_lower_bound(st), 2.0, 1e-9);
}

TEST(HittingLp, FinitePrizeCapsValue) {
  auto in = fixture("diamond.json");
  in.terminals[0].prize = 0.4;
  const auto st = solve_hitting_lp(in);
  EXPECT_NEAR(lp_lower_bound(st), 0.4, 1e-9);
  EXPECT_NEAR(st.y[0], 1.0, 1e-9);
}

TEST(HittingLp, CutLimitIsEnforced) {
  try {
    solve_hitting_lp(fixture("fig2.json"), {1e-7, 1});
    ADD_FAILURE() << "cut limit not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::iteration_limit);
  }
}

TEST(HittingLp, FeasibleForEverySeparatorAndBelowOptimum) {
  for (std::uint64_t seed = 300; seed < 360; ++seed) {
    const auto in = normalize_terminals(testing_support::random_grid(seed, 7, 8)).instance;
    const auto& g = in.graph;
    const int t = g.num_vertices() - 1;
    const auto st = solve_hitting_lp(in);
    for (double v : st.x) {
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
    for (std::uint64_t mask : testing_support::all_separators(g, 0, t)) {
      double lhs = 0.0;
      for (int c = 0; c < g.num_colors; ++c) {
        if (mask >> c & 1U) lhs += st.x[static_cast<std::size_t>(c)];
      }
      EXPECT_GE(lhs, 1.0 - 1e-7) << "seed " << seed << " mask " << mask;
    }
    const int opt = testing_support::brute_min_color_path(g, 0, t);
    EXPECT_LE(lp_lower_bound(st), opt + 1e-9) << "seed " << seed;
    for (std::size_t i = 1; i < st.objective_history.size(); ++i) {
      EXPECT_GE(st.objective_history[i], st.objective_history[i - 1] - 1e-9);
    }
    std::set<std::pair<int, ColorSet>> seen;
    for (const auto& c : st.constraints) EXPECT_TRUE(seen.insert({c.pair, c.colors}).second);
  }
}

TEST(HittingLp, MultiPairConstraintsTagPairs) {
  auto in = fixture("fig2.json");
  in.terminals.push_back({0, 2, kInfinity});  // crosses only the first barrier
  const auto st = solve_hitting_lp(in);
  EXPECT_NEAR(lp_lower_bound(st), 2.0, 1e-9);
  std::set<int> pairs;
  for (const auto& c : st.constraints) pairs.insert(c.pair);
  EXPECT_EQ(pairs, (std::set<int>{0, 1}));
}
