#include "ppqkd/classical_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ppqkd/simplex.hpp"

namespace ppqkd {

StochasticMap::StochasticMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), m_(std::move(entries)) {
  if (m_.size() != rows * cols || rows == 0 || cols == 0) throw std::invalid_argument("stochastic map shape mismatch");
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(m_[r * cols + c] >= 0.0)) throw std::invalid_argument("stochastic map has a negative entry");
      sum += m_[r * cols + c];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("stochastic map row does not sum to 1");
  }
}

StochasticMap StochasticMap::identity(std::size_t n) { return embedding(n, n); }

StochasticMap StochasticMap::embedding(std::size_t rows, std::size_t cols) {
  if (cols < rows) throw std::invalid_argument("embedding needs cols >= rows");
  std::vector<double> m(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) m[r * cols + r] = 1.0;
  return StochasticMap(rows, cols, std::move(m));
}

namespace {

using J = JointDistribution;

void check_shapes(const JointDistribution& p, const StochasticMap& a) {
  if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("Alice's map must be 2x2");
  for (std::size_t x = 0; x < J::kA; ++x)
    for (std::size_t e = 0; e < J::kE; ++e)
      if (p(x, e, 2) > 1e-12 || p(x, e, 3) > 1e-12)
        throw std::invalid_argument("source distribution has mass on Bell symbols 2 or 3");
}

// Source after Alice's relabelling: pa[A'][E][B] for B in {0, 1}.
std::array<double, 2 * 3 * 2> relabel_alice(const JointDistribution& p, const StochasticMap& a) {
  std::array<double, 12> pa{};
  for (std::size_t ap = 0; ap < 2; ++ap)
    for (std::size_t e = 0; e < J::kE; ++e)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t x = 0; x < 2; ++x) pa[(ap * 3 + e) * 2 + b] += p(x, e, b) * a(x, ap);
  return pa;
}

StochasticMap make_map_2x2(double a00, double a10) {
  return StochasticMap(2, 2, {a00, 1.0 - a00, a10, 1.0 - a10});
}

// Grid points covering [0, 1]; exact i/n when 1/step is an integer.
std::vector<double> grid_points(double step) {
  std::vector<double> pts;
  const double inv = 1.0 / step;
  const double n = std::round(inv);
  if (std::abs(inv - n) < 1e-9) {
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i <= count; ++i) pts.push_back(static_cast<double>(i) / n);
  } else {
    for (std::size_t i = 0; i * step <= 1.0; ++i) pts.push_back(i * step);
    if (pts.back() < 1.0) pts.push_back(1.0);
  }
  return pts;
}

}  // namespace

JointDistribution local_postprocess(const JointDistribution& p, const StochasticMap& a, const StochasticMap& b) {
  check_shapes(p, a);
  if (b.rows() != 2 || b.cols() != 4) throw std::invalid_argument("Bob's map must be 2x4");
  const auto pa = relabel_alice(p, a);
  JointDistribution out;
  for (std::size_t ap = 0; ap < 2; ++ap)
    for (std::size_t e = 0; e < J::kE; ++e)
      for (std::size_t bp = 0; bp < J::kB; ++bp) {
        double s = 0.0;
        for (std::size_t src = 0; src < 2; ++src) s += pa[(ap * 3 + e) * 2 + src] * b(src, bp);
        out(ap, e, bp) = s;
      }
  return out;
}

LpFit lp_residual_b_given_a(const JointDistribution& p, const JointDistribution& target, const StochasticMap& a) {
  check_shapes(p, a);
  const auto pa = relabel_alice(p, a);
  // x = (b[0][0..3], b[1][0..3], s); minimize s.
  constexpr std::size_t kVars = 9, kSlack = 8;
  LinearProgram lp;
  lp.cost.assign(kVars, 0.0);
  lp.cost[kSlack] = 1.0;
  for (std::size_t src = 0; src < 2; ++src) {
    std::vector<double> row(kVars, 0.0);
    for (std::size_t bp = 0; bp < 4; ++bp) row[src * 4 + bp] = 1.0;
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(1.0);
  }
  for (std::size_t ap = 0; ap < 2; ++ap)
    for (std::size_t e = 0; e < J::kE; ++e)
      for (std::size_t bp = 0; bp < J::kB; ++bp) {
        std::vector<double> row(kVars, 0.0);
        for (std::size_t src = 0; src < 2; ++src) row[src * 4 + bp] = pa[(ap * 3 + e) * 2 + src];
        const double t = target(ap, e, bp);
        row[kSlack] = -1.0;
        lp.a_ub.push_back(row);
        lp.b_ub.push_back(t);
        for (std::size_t k = 0; k < kSlack; ++k) row[k] = -row[k];
        lp.a_ub.push_back(std::move(row));
        lp.b_ub.push_back(-t);
      }
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw std::logic_error("residual LP is always feasible and bounded");

  std::vector<double> b(sol.x.begin(), sol.x.begin() + kSlack);
  for (std::size_t src = 0; src < 2; ++src) {
    double sum = 0.0;
    for (std::size_t bp = 0; bp < 4; ++bp) sum += (b[src * 4 + bp] = std::max(b[src * 4 + bp], 0.0));
    for (std::size_t bp = 0; bp < 4; ++bp) b[src * 4 + bp] /= sum;
  }
  return {std::max(sol.x[kSlack], 0.0), StochasticMap(2, 4, std::move(b))};
}

FeasibilityReport feasibility_search(const JointDistribution& p, const JointDistribution& target, double grid_step,
                                     double tol) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) throw std::invalid_argument("grid_step must lie in (0, 0.5]");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");

  FeasibilityReport report;
  report.min_residual = std::numeric_limits<double>::infinity();
  double best00 = 0.0, best10 = 0.0;
  auto consider = [&](double a00, double a10) {
    const auto a = make_map_2x2(a00, a10);
    auto fit = lp_residual_b_given_a(p, target, a);
    ++report.lp_solves;
    if (fit.residual < report.min_residual) {
      report.min_residual = fit.residual;
      report.best_a = a;
      report.best_b = std::move(fit.b);
      best00 = a00;
      best10 = a10;
    }
  };

  const auto pts = grid_points(grid_step);
  for (double a00 : pts)
    for (double a10 : pts) consider(a00, a10);

  const double sub = grid_step / 10.0;
  const double c00 = best00, c10 = best10;
  for (int i = -10; i <= 10; ++i)
    for (int k = -10; k <= 10; ++k) {
      if (i == 0 && k == 0) continue;
      const double a00 = c00 + i * sub, a10 = c10 + k * sub;
      if (a00 < 0.0 || a00 > 1.0 || a10 < 0.0 || a10 > 1.0) continue;
      consider(a00, a10);
    }

  report.feasible = report.min_residual < tol;
  return report;
}

AlgebraicCertificate algebraic_witness(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  std::ostringstream l4, l2;
  l4 << lambda / 4;
  l2 << lambda / 2;
  AlgebraicCertificate cert;
  cert.steps.push_back("P'(A'=0,E=1,B'=2) = P110 a10 b02 + P111 a10 b12 = (a10/8)(b02 + b12) = 0");
  cert.steps.push_back("P'(A'=1,E=1,B'=2) = (a11/8)(b02 + b12) = 0; a10 + a11 = 1 so one of them is positive, "
                       "hence b02 + b12 = 0 and b02 = 0");
  cert.steps.push_back("P'(A'=0,E=0,B'=2) = a00 b02/2 + (a10/8)(b02 + b12) = lambda/4 = " + l4.str() +
                       ", hence a00 b02 = lambda/2 = " + l2.str());
  cert.infeasible = lambda > 0.0;
  if (cert.infeasible)
    cert.steps.push_back("a00 b02 = lambda/2 > 0 requires b02 > 0, contradicting b02 = 0: no local classical "
                         "post-processing reproduces the table");
  else
    cert.steps.push_back("a00 b02 = 0 is consistent with b02 = 0: these cells give no contradiction");
  return cert;
}

}  // namespace ppqkd
