#pragma once

#include <vector>

namespace ppqkd {

// minimize c·x  subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0
struct LinearProgram {
  std::vector<double> cost;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase tableau simplex with Bland's rule. Throws std::runtime_error
// if the pivot guard is exceeded and std::invalid_argument on shape errors.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace ppqkd
