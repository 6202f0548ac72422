#pragma once

// Can Alice and Bob reproduce the noisy statistics from the noiseless ones by
// each applying a private, memoryless random relabelling of their own symbol?
//
// With Alice's map a (2x2) fixed, the reproduced table is linear in Bob's
// map b (2x4), so the best L-infinity fit over b is a small LP. Alice's two
// free parameters are swept on a grid.

#include <string>
#include <vector>

#include "ppqkd/protocol.hpp"

namespace ppqkd {

class StochasticMap {
 public:
  // Throws std::invalid_argument unless entries are >= 0 and rows sum to 1 within 1e-12.
  StochasticMap(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static StochasticMap identity(std::size_t n);
  // Row r sends symbol r to symbol r of a larger alphabet.
  static StochasticMap embedding(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> m_;
};

// P'(A',E,B') = sum_{A,B} P(A,E,B) a[A][A'] b[B][B']. a is 2x2, b is 2x4 and
// the source must have no mass on Bell symbols 2 and 3.
JointDistribution local_postprocess(const JointDistribution& p, const StochasticMap& a, const StochasticMap& b);

struct LpFit {
  double residual = 0.0;  // min over b of max |P' - target|
  StochasticMap b = StochasticMap::embedding(2, 4);
};

LpFit lp_residual_b_given_a(const JointDistribution& p, const JointDistribution& target, const StochasticMap& a);

struct FeasibilityReport {
  double min_residual = 0.0;
  StochasticMap best_a = StochasticMap::identity(2);
  StochasticMap best_b = StochasticMap::embedding(2, 4);
  bool feasible = false;  // min_residual < tol
  std::size_t lp_solves = 0;
};

// Sweeps a[0][0] and a[1][0] over [0,1]^2 at grid_step, then refines once at
// grid_step/10 within one step of the best cell.
FeasibilityReport feasibility_search(const JointDistribution& p, const JointDistribution& target, double grid_step,
                                     double tol);

struct AlgebraicCertificate {
  std::vector<std::string> steps;
  bool infeasible = false;
};

// Cell-by-cell contradiction for reproducing the case-2 table from the
// noiseless one; infeasible exactly when lambda > 0.
AlgebraicCertificate algebraic_witness(double lambda);

}  // namespace ppqkd
