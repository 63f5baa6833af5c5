#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"

namespace minpath {

/// min cost.x  subject to  rows[i].x >= rhs[i],  0 <= x <= upper.
struct SimplexProblem {
  int num_vars = 0;
  std::vector<double> cost;
  std::vector<double> upper;  // kInfinity for no upper bound
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

enum class SimplexStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::optimal;
  std::vector<double> x;
  double value = 0.0;
  int pivots = 0;
};

/// Covering LP with nonnegative costs, solved through its packing dual
///
///   max rhs.lambda - upper.mu   s.t.  A^T lambda - mu <= cost,  lambda, mu >= 0
///
/// by a dense tableau primal simplex. The all-slack basis is feasible because
/// cost >= 0, and a new covering row is a new dual column, so rows can be added
/// between solves while keeping the current basis (warm start). The covering
/// solution is read off the slack reduced costs.
class CoveringLp {
 public:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kOptTol = 1e-11;

  CoveringLp(std::vector<double> cost, std::vector<double> upper)
      : cost_(std::move(cost)), upper_(std::move(upper)) {
    if (upper_.size() != cost_.size()) throw Error(ErrorCode::invalid_argument, "cost/upper size mismatch");
    for (double c : cost_) {
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorCode::invalid_argument, "covering costs must be finite and nonnegative");
      }
    }
    reset_tableau();
    for (std::size_t j = 0; j < upper_.size(); ++j) {
      if (std::isfinite(upper_[j])) {
        std::vector<std::pair<int, double>> col{{static_cast<int>(j), -1.0}};
        push_column(col, -upper_[j], -1);
      }
    }
  }

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  /// Adds  sum coef_j x_j >= rhs. Returns the row index.
  int add_row(std::vector<std::pair<int, double>> coefs, double rhs) {
    const int id = num_rows();
    rows_.push_back({coefs, rhs});
    push_column(coefs, rhs, id);
    return id;
  }

  SimplexStatus optimize() {
    const int r = num_vars();
    int degenerate = 0;
    bool bland = false;
    const int max_pivots = 50 * (r + num_columns()) + 1000;
    for (int iter = 0;; ++iter) {
      if (iter > max_pivots) throw Error(ErrorCode::iteration_limit, "simplex pivot limit reached");
      const int q = choose_entering(bland);
      if (q < 0) return status_ = SimplexStatus::optimal;
      int leave = -1;
      double best_ratio = kInfinity;
      for (int i = 0; i < r; ++i) {
        const double a = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
        if (a <= kPivotTol) continue;
        const double ratio = beta_[static_cast<std::size_t>(i)] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = i;
        }
      }
      // Packing dual unbounded <=> covering problem infeasible.
      if (leave < 0) return status_ = SimplexStatus::infeasible;
      pivot(leave, q);
      ++pivots_;
      if (best_ratio <= 1e-12) {
        if (++degenerate > 2 * (r + num_columns())) bland = true;
      } else {
        degenerate = 0;
      }
    }
  }

  /// Covering solution (dual prices of the packing rows), clipped into bounds.
  std::vector<double> x() const {
    std::vector<double> out(cost_.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = std::clamp(red_[j], 0.0, upper_[j]);
    }
    return out;
  }

  double value() const {
    const auto xs = x();
    double v = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) v += cost_[j] * xs[j];
    return v;
  }

  /// Packing objective at the current basis; equals value() at optimality.
  double dual_value() const {
    double v = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const int col = basis_[i];
      if (col >= num_vars()) v += obj_[static_cast<std::size_t>(col)] * beta_[i];
    }
    return v;
  }

  /// Largest violation of a stored row or bound at x().
  double max_residual() const {
    const auto xs = x();
    double worst = 0.0;
    for (const auto& [coefs, rhs] : rows_) {
      double lhs = 0.0;
      for (const auto& [j, a] : coefs) lhs += a * xs[static_cast<std::size_t>(j)];
      worst = std::max(worst, rhs - lhs);
    }
    for (std::size_t j = 0; j < xs.size(); ++j) {
      worst = std::max(worst, red_[j] - upper_[j]);
      worst = std::max(worst, -red_[j]);
    }
    return worst;
  }

  /// Discards the basis and restarts from all slacks (used when a warm-started
  /// tableau has drifted numerically).
  void rebuild() {
    auto rows = std::move(rows_);
    rows_.clear();
    reset_tableau();
    for (std::size_t j = 0; j < upper_.size(); ++j) {
      if (std::isfinite(upper_[j])) {
        std::vector<std::pair<int, double>> col{{static_cast<int>(j), -1.0}};
        push_column(col, -upper_[j], -1);
      }
    }
    for (auto& [coefs, rhs] : rows) add_row(std::move(coefs), rhs);
  }

  int pivots() const { return pivots_; }

 private:
  int num_columns() const { return static_cast<int>(obj_.size()); }

  void reset_tableau() {
    const std::size_t r = cost_.size();
    tab_.assign(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i) tab_[i][i] = 1.0;
    beta_ = cost_;
    basis_.resize(r);
    for (std::size_t i = 0; i < r; ++i) basis_[i] = static_cast<int>(i);
    obj_.assign(r, 0.0);
    red_.assign(r, 0.0);
    col_row_.assign(r, -1);
  }

  void push_column(const std::vector<std::pair<int, double>>& coefs, double obj, int row_id) {
    const std::size_t r = cost_.size();
    // Column in the current basis: B^{-1} a, read from the slack block.
    double reduced = -obj;
    for (std::size_t i = 0; i < r; ++i) {
      double v = 0.0;
      for (const auto& [j, a] : coefs) v += tab_[i][static_cast<std::size_t>(j)] * a;
      tab_[i].push_back(v);
    }
    for (const auto& [j, a] : coefs) reduced += red_[static_cast<std::size_t>(j)] * a;
    obj_.push_back(obj);
    red_.push_back(reduced);
    col_row_.push_back(row_id);
  }

  int choose_entering(bool bland) const {
    int best = -1;
    double best_val = -kOptTol;
    for (int q = 0; q < num_columns(); ++q) {
      const double d = red_[static_cast<std::size_t>(q)];
      if (d >= -kOptTol) continue;
      if (bland) return q;
      if (d < best_val) {
        best_val = d;
        best = q;
      }
    }
    return best;
  }

  void pivot(int row, int col) {
    auto& prow = tab_[static_cast<std::size_t>(row)];
    const double p = prow[static_cast<std::size_t>(col)];
    for (double& v : prow) v /= p;
    beta_[static_cast<std::size_t>(row)] /= p;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      const double f = tab_[i][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      auto& ri = tab_[i];
      for (std::size_t k = 0; k < ri.size(); ++k) ri[k] -= f * prow[k];
      ri[static_cast<std::size_t>(col)] = 0.0;
      beta_[i] -= f * beta_[static_cast<std::size_t>(row)];
      if (beta_[i] < 0.0 && beta_[i] > -1e-12) beta_[i] = 0.0;
    }
    const double f = red_[static_cast<std::size_t>(col)];
    for (std::size_t k = 0; k < red_.size(); ++k) red_[k] -= f * prow[k];
    red_[static_cast<std::size_t>(col)] = 0.0;
    basis_[static_cast<std::size_t>(row)] = col;
  }

  std::vector<double> cost_;
  std::vector<double> upper_;
  std::vector<std::pair<std::vector<std::pair<int, double>>, double>> rows_;
  std::vector<std::vector<double>> tab_;  // num_vars x columns (slacks first)
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<double> obj_;
  std::vector<double> red_;  // reduced costs; slack block holds the covering x
  std::vector<int> col_row_;
  SimplexStatus status_ = SimplexStatus::optimal;
  int pivots_ = 0;
};

/// One-shot solve. Negative costs are allowed on bounded variables (they are
/// complemented, x = upper - x'); an unbounded variable with negative cost and
/// a nonnegative column makes the problem UNBOUNDED whenever it is feasible.
inline SimplexResult simplex_solve(const SimplexProblem& p) {
  const auto n = static_cast<std::size_t>(p.num_vars);
  if (p.cost.size() != n || p.upper.size() != n || p.rows.size() != p.rhs.size()) {
    throw Error(ErrorCode::invalid_argument, "malformed simplex problem");
  }
  std::vector<double> cost = p.cost;
  std::vector<char> flipped(n, 0);
  std::vector<double> rhs = p.rhs;
  bool ray = false;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& row : p.rows) {
      if (row.size() != n || !std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorCode::invalid_argument, "rows must be finite and have num_vars entries");
      }
    }
    if (cost[j] >= 0.0) continue;
    if (std::isfinite(p.upper[j])) {
      flipped[j] = 1;
      cost[j] = -cost[j];
      for (std::size_t i = 0; i < p.rows.size(); ++i) rhs[i] -= p.rows[i][j] * p.upper[j];
      continue;
    }
    bool nonneg = std::all_of(p.rows.begin(), p.rows.end(), [&](const auto& row) { return row[j] >= 0.0; });
    if (!nonneg) throw Error(ErrorCode::invalid_argument, "unsupported: unbounded variable with negative cost");
    ray = true;
    cost[j] = 0.0;
  }

  CoveringLp lp(cost, p.upper);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    std::vector<std::pair<int, double>> coefs;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = flipped[j] ? -p.rows[i][j] : p.rows[i][j];
      if (a != 0.0) coefs.emplace_back(static_cast<int>(j), a);
    }
    lp.add_row(std::move(coefs), rhs[i]);
  }
  SimplexResult out;
  out.status = lp.optimize();
  out.pivots = lp.pivots();
  if (out.status != SimplexStatus::optimal) return out;
  if (ray) {
    out.status = SimplexStatus::unbounded;
    return out;
  }
  out.x = lp.x();
  for (std::size_t j = 0; j < n; ++j) {
    if (flipped[j]) out.x[j] = p.upper[j] - out.x[j];
  }
  out.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.value += p.cost[j] * out.x[j];
  return out;
}

}  // namespace minpath
