#include "ppqkd/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ppqkd {

namespace {

constexpr double kProbFloor = 1e-15;

void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

}  // namespace

double Distribution2D::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

std::vector<double> Distribution2D::row_marginal() const {
  std::vector<double> m(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m[r] += (*this)(r, c);
  return m;
}

std::vector<double> Distribution2D::col_marginal() const {
  std::vector<double> m(cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m[c] += (*this)(r, c);
  return m;
}

Distribution2D marginalize(const JointDistribution& joint, PartyPair pair) {
  using J = JointDistribution;
  switch (pair) {
    case PartyPair::AB: {
      Distribution2D d(J::kA, J::kB);
      for (std::size_t a = 0; a < J::kA; ++a)
        for (std::size_t e = 0; e < J::kE; ++e)
          for (std::size_t b = 0; b < J::kB; ++b) d(a, b) += joint(a, e, b);
      return d;
    }
    case PartyPair::AE: {
      Distribution2D d(J::kA, J::kE);
      for (std::size_t a = 0; a < J::kA; ++a)
        for (std::size_t e = 0; e < J::kE; ++e)
          for (std::size_t b = 0; b < J::kB; ++b) d(a, e) += joint(a, e, b);
      return d;
    }
    case PartyPair::EB: {
      Distribution2D d(J::kE, J::kB);
      for (std::size_t a = 0; a < J::kA; ++a)
        for (std::size_t e = 0; e < J::kE; ++e)
          for (std::size_t b = 0; b < J::kB; ++b) d(e, b) += joint(a, e, b);
      return d;
    }
  }
  throw std::invalid_argument("unknown party pair");
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > kProbFloor) h -= v * std::log2(v);
  return h;
}

double mutual_information(const Distribution2D& p) {
  for (double v : p.values())
    if (v < -1e-12) throw std::invalid_argument("mutual_information: negative probability");
  if (std::abs(p.total() - 1.0) > 1e-9) throw std::invalid_argument("mutual_information: distribution not normalized");
  const auto rows = p.row_marginal(), cols = p.col_marginal();
  double mi = 0.0;
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (std::size_t c = 0; c < p.cols(); ++c) {
      const double v = p(r, c);
      if (v > kProbFloor) mi += v * std::log2(v / (rows[r] * cols[c]));
    }
  return std::max(mi, 0.0);
}

double holevo_bound(const Ensemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("holevo_bound: empty ensemble");
  double total = 0.0;
  for (const auto& m : ensemble) {
    if (m.prob < 0.0) throw std::invalid_argument("holevo_bound: negative weight");
    if (m.rho.dimension() != ensemble.front().rho.dimension())
      throw std::invalid_argument("holevo_bound: members differ in dimension");
    total += m.prob;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("holevo_bound: weights do not sum to 1");
  ComplexOperator average(ensemble.front().rho.layout());
  double mixed = 0.0;
  for (const auto& m : ensemble) {
    average += Complex(m.prob) * m.rho;
    mixed += m.prob * von_neumann_entropy(m.rho);
  }
  return std::max(von_neumann_entropy(average) - mixed, 0.0);
}

KeyRateReport key_rates(const ProtocolScenario& scenario) {
  const auto joint = measure_joint(scenario);
  KeyRateReport r;
  r.lambda = scenario.variant == Variant::noiseless ? 0.0 : scenario.lambda;
  r.i_ab = mutual_information(marginalize(joint, PartyPair::AB));
  r.i_ae = mutual_information(marginalize(joint, PartyPair::AE));
  r.chi_ae = holevo_bound(eve_ensemble(scenario));
  r.chi_ab = holevo_bound(bob_ensemble(scenario));
  r.k_min = r.i_ab - r.chi_ae;
  r.k_max = r.i_ab - r.i_ae;
  return r;
}

double closed_form_iae(double lambda) {
  require_lambda(lambda);
  const double l = lambda;
  return 1.0 + 0.5 * std::log2(2.0 / (l + 3.0)) + 0.25 * (l + 1.0) * std::log2((l + 1.0) / (l + 3.0));
}

double closed_form_iab_case2(double lambda) {
  require_lambda(lambda);
  return 0.75 * (1.0 - lambda) * std::log2(4.0 / 3.0);
}

double iab_case1_as_printed(double lambda) {
  require_lambda(lambda);
  const double l = lambda, s = std::sqrt(1.0 - l);
  // coefficient * log2(ratio) with 0 * log 0 = 0
  auto term = [&](double coefficient, double num, double den) {
    const double ratio = num / den;
    if (coefficient == 0.0 || (ratio == 0.0 && std::abs(coefficient) < 1e-15)) return 0.0;
    if (!(ratio > 0.0))
      throw std::domain_error("iab_case1_as_printed: nonpositive log argument at lambda=" + std::to_string(l));
    return coefficient * std::log2(ratio);
  };
  const double sum = -2.0 * l + term(l - 2.0 * (s + 1.0), -l + 2.0 * s + 2.0, -l + s + 2.0) +
                     term(l - 2.0, l - 2.0, l - s - 2.0) + term(l - 2.0, l - 2.0, l + s - 2.0) +
                     term(l + 2.0 * (s - 1.0), l + 2.0 * s - 2.0, l + s - 2.0);
  return -sum / 8.0;
}

}  // namespace ppqkd
