#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"
#include "minpath/separator.hpp"
#include "minpath/simplex.hpp"

namespace minpath {

/// One separator constraint: sum_{j in colors} x_j (+ y_pair) >= 1.
struct Cut {
  int pair = 0;
  ColorSet colors;
  double weight = 0.0;  // oracle weight when the cut was found
  int iteration = 0;

  friend bool operator==(const Cut&, const Cut&) = default;
};

struct LpState {
  std::vector<double> x;  // per color
  std::vector<double> y;  // per pair; stays 0 for pairs with infinite prize
  std::vector<Cut> constraints;
  double objective_value = 0.0;
  int iterations = 0;
  std::vector<double> objective_history;  // one entry per restricted solve
};

struct LpOptions {
  double tol = 1e-7;
  int max_cuts = 0;  // 0: 10 * m * pairs + 1000
};

/// Cutting-plane solution of the Hitting-LP with one y variable per pair of
/// finite prize. Each round solves the restricted LP, asks every pair's
/// separation oracle for a minimum separator under the current x, and adds
/// it when its weight is below 1 - y_k - tol. Stops after a round without
/// violations, which doubles as the final feasibility sweep.
inline LpState solve_hitting_lp(const Instance& in, const LpOptions& opt = {}) {
  const auto& g = in.graph;
  const int m = g.num_colors;
  const int k = static_cast<int>(in.terminals.size());
  if (!(opt.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  const long long cut_limit =
      opt.max_cuts > 0 ? opt.max_cuts : 10LL * std::max(m, 1) * std::max(k, 1) + 1000;

  // Columns: x_0..x_{m-1}, then one y per finite-prize pair.
  std::vector<double> cost(static_cast<std::size_t>(m), 1.0);
  std::vector<double> upper(static_cast<std::size_t>(m), 1.0);
  std::vector<int> y_col(static_cast<std::size_t>(k), -1);
  for (int p = 0; p < k; ++p) {
    const double prize = in.terminals[static_cast<std::size_t>(p)].prize;
    if (prize == kInfinity) continue;
    y_col[static_cast<std::size_t>(p)] = static_cast<int>(cost.size());
    cost.push_back(prize);
    upper.push_back(1.0);
  }
  CoveringLp lp(cost, upper);

  std::vector<std::optional<SeparationOracle>> oracles(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    const auto& tp = in.terminals[static_cast<std::size_t>(p)];
    oracles[static_cast<std::size_t>(p)].emplace(g, tp.s, tp.t);
  }

  LpState st;
  std::set<std::pair<int, ColorSet>> seen;
  for (int iter = 0;; ++iter) {
    if (lp.optimize() != SimplexStatus::optimal) {
      throw Error(ErrorCode::infeasible, "restricted hitting LP is infeasible");
    }
    if (lp.max_residual() > 1e-9) {
      lp.rebuild();
      if (lp.optimize() != SimplexStatus::optimal || lp.max_residual() > 1e-9) {
        throw Error(ErrorCode::invariant_violation, "simplex residual above 1e-9 after rebuild");
      }
    }
    const auto sol = lp.x();
    const double value = lp.value();
    if (!st.objective_history.empty() && value < st.objective_history.back() - 1e-9) {
      throw Error(ErrorCode::invariant_violation, "LP objective decreased after adding cuts");
    }
    st.objective_history.push_back(value);
    st.iterations = iter + 1;
    st.x.assign(sol.begin(), sol.begin() + m);
    st.y.assign(static_cast<std::size_t>(k), 0.0);
    for (int p = 0; p < k; ++p) {
      if (y_col[static_cast<std::size_t>(p)] >= 0) {
        st.y[static_cast<std::size_t>(p)] = sol[static_cast<std::size_t>(y_col[static_cast<std::size_t>(p)])];
      }
    }
    st.objective_value = value;

    int added = 0;
    for (int p = 0; p < k; ++p) {
      auto res = oracles[static_cast<std::size_t>(p)]->solve(st.x);
      if (!res) continue;
      const double yk = st.y[static_cast<std::size_t>(p)];
      if (!(res->weight < 1.0 - yk - opt.tol)) continue;
      if (!seen.insert({p, res->colors}).second) {
        throw Error(ErrorCode::invariant_violation,
                    "violated separator is already a constraint (pair " + std::to_string(p) + ")");
      }
      std::vector<std::pair<int, double>> coefs;
      for (Color c : res->colors) coefs.emplace_back(c, 1.0);
      if (y_col[static_cast<std::size_t>(p)] >= 0) coefs.emplace_back(y_col[static_cast<std::size_t>(p)], 1.0);
      lp.add_row(std::move(coefs), 1.0);
      st.constraints.push_back({p, res->colors, res->weight, iter});
      ++added;
    }
    if (added == 0) return st;
    if (static_cast<long long>(st.constraints.size()) > cut_limit) {
      throw Error(ErrorCode::iteration_limit,
                  "cutting-plane loop exceeded " + std::to_string(cut_limit) + " cuts");
    }
  }
}

/// LP optimum; a lower bound on the integral optimum (colors plus forfeited
/// prizes) of the instance the LP was built for.
inline double lp_lower_bound(const LpState& st) { return st.objective_value; }

}  // namespace minpath
