#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppqkd/protocol.hpp"

namespace ppqkd {

// Row-major two-party distribution.
class Distribution2D {
 public:
  Distribution2D(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), p_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return p_[r * cols_ + c]; }
  double total() const;
  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;
  const std::vector<double>& values() const { return p_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> p_;
};

enum class PartyPair { AB, AE, EB };

Distribution2D marginalize(const JointDistribution& joint, PartyPair pair);

// Shannon entropy in bits; probabilities below 1e-15 contribute nothing.
double shannon_entropy(std::span<const double> p);

// Throws std::invalid_argument unless the input is nonnegative and sums to 1 within 1e-9.
double mutual_information(const Distribution2D& p);

// S(sum p_i rho_i) - sum p_i S(rho_i), in bits.
double holevo_bound(const Ensemble& ensemble);

struct KeyRateReport {
  double lambda = 0.0;
  double i_ab = 0.0;
  double i_ae = 0.0;
  double chi_ae = 0.0;
  double chi_ab = 0.0;
  double k_min = 0.0;  // i_ab - chi_ae
  double k_max = 0.0;  // i_ab - i_ae
};

KeyRateReport key_rates(const ProtocolScenario& scenario);

// Alice-Eve mutual information read off the reference case tables, in bits:
// 1 + (1/2) log2(2/(l+3)) + (1/4)(l+1) log2((l+1)/(l+3)).
double closed_form_iae(double lambda);
// (3/4)(1 - l) log2(4/3)
double closed_form_iab_case2(double lambda);
// The long closed-form case-1 expression for I(A:B), evaluated term by term
// with base-2 logs. It does not agree with the mutual information of the
// case-1 table for 0 < lambda; kept only as a cross-check.
double iab_case1_as_printed(double lambda);

}  // namespace ppqkd
