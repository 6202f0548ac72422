#include "ppqkd/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppqkd {

namespace {

// Generic tableau entries here are O(1e-3) or larger; anything under 1e-6 is
// cancellation residue, and pivoting on it wrecks the tableau.
constexpr double kPivotEps = 1e-6;
constexpr double kCostEps = 1e-11;
constexpr int kMaxPivots = 50000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), t_(rows, std::vector<double>(cols + 1)), basis_(rows) {}

  std::vector<std::vector<double>>& rows() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<double>& objective() { return obj_; }
  double rhs(std::size_t i) const { return t_[i][cols_]; }

  // Reduced costs for cost vector c, made consistent with the current basis.
  void set_objective(const std::vector<double>& c) {
    obj_.assign(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const double f = obj_[basis_[i]];
      if (f != 0.0)
        for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= f * t_[i][j];
    }
  }

  double objective_value() const { return -obj_[cols_]; }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t_[row];
    const double inv = 1.0 / pr[col];
    for (auto& v : pr) v *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * pr[j];
      t_[i][col] = 0.0;
    }
    const double f = obj_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= f * pr[j];
      obj_[col] = 0.0;
    }
    basis_[row] = col;
  }

  // Bland's rule over columns [0, active_cols). Returns false if unbounded.
  bool optimize(std::size_t active_cols, int& pivots) {
    for (;;) {
      std::size_t enter = active_cols;
      for (std::size_t j = 0; j < active_cols; ++j)
        if (obj_[j] < -kCostEps) {
          enter = j;
          break;
        }
      if (enter == active_cols) return true;
      std::size_t leave = t_.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const double a = t_[i][enter];
        if (a <= kPivotEps) continue;
        // Round-off can leave a basic value a hair below zero; treat it as a
        // degenerate zero so the ratio test never picks a negative step.
        const double ratio = std::max(t_[i][cols_], 0.0) / a;
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == t_.size()) return false;
      if (++pivots > kMaxPivots) throw std::runtime_error("simplex: pivot limit exceeded");
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t i) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> obj_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.cost.size();
  const std::size_t m_eq = lp.a_eq.size(), m_ub = lp.a_ub.size(), m = m_eq + m_ub;
  if (lp.b_eq.size() != m_eq || lp.b_ub.size() != m_ub) throw std::invalid_argument("simplex: rhs size mismatch");
  for (const auto& r : lp.a_eq)
    if (r.size() != n) throw std::invalid_argument("simplex: equality row width mismatch");
  for (const auto& r : lp.a_ub)
    if (r.size() != n) throw std::invalid_argument("simplex: inequality row width mismatch");

  // Columns: structural | slacks (one per inequality) | artificials.
  std::vector<bool> needs_artificial(m);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool eq = i < m_eq;
    const double b = eq ? lp.b_eq[i] : lp.b_ub[i - m_eq];
    needs_artificial[i] = eq || b < 0.0;
    if (needs_artificial[i]) ++n_art;
  }
  const std::size_t slack0 = n, art0 = n + m_ub, cols = n + m_ub + n_art;
  Tableau tab(m, cols);
  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool eq = i < m_eq;
    const auto& a = eq ? lp.a_eq[i] : lp.a_ub[i - m_eq];
    double b = eq ? lp.b_eq[i] : lp.b_ub[i - m_eq];
    auto& row = tab.rows()[i];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * a[j];
    if (!eq) row[slack0 + (i - m_eq)] = sign;
    row[cols] = sign * b;
    if (needs_artificial[i]) {
      row[art] = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + (i - m_eq);
    }
  }

  int pivots = 0;
  if (n_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = 1.0;
    tab.set_objective(phase1);
    tab.optimize(cols, pivots);
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(tab.rhs(i)));
    if (tab.objective_value() > 1e-9 * scale) return {LpStatus::infeasible, 0.0, {}};
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t i = tab.rows().size(); i-- > 0;) {
      if (tab.basis()[i] < art0) continue;
      std::size_t col = art0;
      double biggest = 1e-9;
      for (std::size_t j = 0; j < art0; ++j)
        if (std::abs(tab.rows()[i][j]) > biggest) {
          biggest = std::abs(tab.rows()[i][j]);
          col = j;
        }
      if (col == art0)
        tab.drop_row(i);
      else
        tab.pivot(i, col);
    }
  }

  tab.set_objective(lp.cost);
  if (!tab.optimize(art0, pivots)) return {LpStatus::unbounded, 0.0, {}};

  LpSolution sol{LpStatus::optimal, 0.0, std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < tab.rows().size(); ++i)
    if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = tab.rhs(i);
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.cost[j] * sol.x[j];
  return sol;
}

}  // namespace ppqkd
