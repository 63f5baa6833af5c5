#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "minpath/gen.hpp"
#include "minpath/simplex.hpp"

using namespace minpath;

namespace {

// Reference optimum by vertex enumeration: every choice of n tight
// constraints (rows or bounds) is solved by Gaussian elimination and the best
// feasible point kept. Only for a handful of variables.
double enumerate_vertices(const SimplexProblem& p, bool* feasible) {
  const int n = p.num_vars;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    a.push_back(p.rows[i]);
    b.push_back(p.rhs[i]);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    a.push_back(e);
    b.push_back(0.0);
    if (std::isfinite(p.upper[static_cast<std::size_t>(j)])) {
      a.push_back(e);
      b.push_back(p.upper[static_cast<std::size_t>(j)]);
    }
  }
  const int total = static_cast<int>(a.size());
  double best = kInfinity;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<double>> m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n) + 1));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = a[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])][static_cast<std::size_t>(c)];
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] = b[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
      }
      for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r) {
          if (std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > 1e-12 &&
              (piv < 0 || std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > std::abs(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))) {
            piv = r;
          }
        }
        if (piv < 0) return;
        std::swap(m[static_cast<std::size_t>(c)], m[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < n; ++r) {
          if (r == c) continue;
          const double f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
          for (int k = c; k <= n; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
        }
      }
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) x[static_cast<std::size_t>(c)] = m[static_cast<std::size_t>(c)][static_cast<std::size_t>(n)] / m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      for (int j = 0; j < n; ++j) {
        if (x[static_cast<std::size_t>(j)] < -1e-9 || x[static_cast<std::size_t>(j)] > p.upper[static_cast<std::size_t>(j)] + 1e-9) return;
      }
      for (std::size_t i = 0; i < p.rows.size(); ++i) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += p.rows[i][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        if (lhs < p.rhs[i] - 1e-9) return;
      }
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += p.cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      best = std::min(best, v);
      return;
    }
    for (int i = start; i < total; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  *feasible = best < kInfinity;
  return best;
}

}  // namespace

TEST(Simplex, NoConstraints) {
  SimplexProblem p{2, {1.0, 1.0}, {1.0, 1.0}, {}, {}};
  const auto r = simplex_solve(p);
  ASSERT_EQ(r.status, SimplexStatus::optimal);
  EXPECT_EQ(r.x, (std::vector<double>{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(r.value, 0.0);
}

TEST(Simplex, SingleCoveringRow) {
  SimplexProblem p{2, {1.0, 1.0}, {1.0, 1.0}, {{1.0, 1.0}}, {1.0}};
  const auto r = simplex_solve(p);
  ASSERT_EQ(r.status, SimplexStatus::optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.x[0] + r.x[1], 1.0, 1e-9);
}

TEST(Simplex, ForfeitVariableWins) {
  // x0 + y0 >= 1, minimise x0 + 0.4 y0.
  SimplexProblem p{2, {1.0, 0.4}, {1.0, 1.0}, {{1.0, 1.0}}, {1.0}};
  const auto r = simplex_solve(p);
  ASSERT_EQ(r.status, SimplexStatus::optimal);
  EXPECT_NEAR(r.value, 0.4, 1e-12);
  EXPECT_NEAR(r.x[0], 0.0, 1e-9);
  EXPECT_NEAR(r.x[1], 1.0, 1e-9);
}

TEST(Simplex, DetectsInfeasibility) {
  SimplexProblem p{1, {1.0}, {1.0}, {{1.0}}, {2.0}};
  EXPECT_EQ(simplex_solve(p).status, SimplexStatus::infeasible);
  SimplexProblem q{1, {1.0}, {kInfinity}, {{0.0}}, {1.0}};
  EXPECT_EQ(simplex_solve(q).status, SimplexStatus::infeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  SimplexProblem p{2, {-1.0, 1.0}, {kInfinity, 1.0}, {{1.0, 1.0}}, {1.0}};
  EXPECT_EQ(simplex_solve(p).status, SimplexStatus::unbounded);
}

TEST(Simplex, NegativeCostOnBoundedVariable) {
  SimplexProblem p{2, {-1.0, 2.0}, {3.0, 1.0}, {{-1.0, 1.0}}, {-2.5}};
  const auto r = simplex_solve(p);
  ASSERT_EQ(r.status, SimplexStatus::optimal);
  // Past x0 = 2.5 every unit of x0 forces a unit of x1 at twice the price.
  EXPECT_NEAR(r.value, -2.5, 1e-9);
  EXPECT_NEAR(r.x[0], 2.5, 1e-9);
  EXPECT_NEAR(r.x[1], 0.0, 1e-9);
}

TEST(Simplex, AgreesWithVertexEnumeration) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 4));
    const int rows = static_cast<int>(uniform_below(rng, 6));
    SimplexProblem p;
    p.num_vars = n;
    for (int j = 0; j < n; ++j) {
      p.cost.push_back(std::round(uniform01(rng) * 4.0) / 2.0);
      p.upper.push_back(uniform_below(rng, 3) == 0 ? kInfinity : 1.0);
    }
    for (int i = 0; i < rows; ++i) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j) row.push_back(static_cast<double>(uniform_below(rng, 3)));
      p.rows.push_back(row);
      p.rhs.push_back(1.0 + static_cast<double>(uniform_below(rng, 2)));
    }
    bool feasible = false;
    const double expect = enumerate_vertices(p, &feasible);
    const auto r = simplex_solve(p);
    if (!feasible) {
      EXPECT_EQ(r.status, SimplexStatus::infeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(r.status, SimplexStatus::optimal) << "trial " << trial;
    EXPECT_NEAR(r.value, expect, 1e-9) << "trial " << trial;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += p.rows[i][static_cast<std::size_t>(j)] * r.x[static_cast<std::size_t>(j)];
      EXPECT_GE(lhs, p.rhs[i] - 1e-9) << "trial " << trial;
    }
  }
}

TEST(CoveringLp, WarmStartMatchesColdSolve) {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    CoveringLp warm(std::vector<double>(n, 1.0), std::vector<double>(n, 1.0));
    SimplexProblem cold{n, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), {}, {}};
    double last = 0.0;
    for (int step = 0; step < 8; ++step) {
      std::vector<std::pair<int, double>> coefs;
      std::vector<double> dense(n, 0.0);
      for (int j = 0; j < n; ++j) {
        if (uniform_below(rng, 2) == 0) {
          coefs.emplace_back(j, 1.0);
          dense[static_cast<std::size_t>(j)] = 1.0;
        }
      }
      if (coefs.empty()) {
        coefs.emplace_back(0, 1.0);
        dense[0] = 1.0;
      }
      warm.add_row(coefs, 1.0);
      cold.rows.push_back(dense);
      cold.rhs.push_back(1.0);
      ASSERT_EQ(warm.optimize(), SimplexStatus::optimal);
      const auto r = simplex_solve(cold);
      EXPECT_NEAR(warm.value(), r.value, 1e-9);
      EXPECT_NEAR(warm.value(), warm.dual_value(), 1e-9);
      EXPECT_LE(warm.max_residual(), 1e-9);
      EXPECT_GE(warm.value(), last - 1e-9);
      last = warm.value();
    }
  }
}
