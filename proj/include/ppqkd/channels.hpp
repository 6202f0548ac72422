#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppqkd/linalg.hpp"

namespace ppqkd {

enum class DampingRegime { markovian_like, critical, non_markovian };

// Damped Jaynes-Cummings reservoir: spectral bandwidth g and coupling gamma,
// both inverse times.
class DampingParams {
 public:
  DampingParams(double g, double gamma);

  double g() const { return g_; }
  double gamma() const { return gamma_; }
  // g^2 - 2 gamma g; the decay/oscillation rate is sqrt(|l_squared|).
  double l_squared() const { return g_ * g_ - 2.0 * gamma_ * g_; }
  DampingRegime regime() const;

 private:
  double g_;
  double gamma_;
};

// Damping probability lambda(t) = 1 - G(t)^2, where
// G(t) = e^{-gt/2} [cosh(lt/2) + (g/l) sinh(lt/2)], l = sqrt(g^2 - 2 gamma g).
// For imaginary l the bracket is evaluated in trigonometric form, and l = 0
// uses the limit (1 + gt/2).
double jc_damping(const DampingParams& params, double t);

struct GadParams {
  double p = 0.0;       // thermal mixing, [0, 1/2]
  double lambda = 0.0;  // damping, [0, 1]
};

class KrausChannel {
 public:
  // Throws std::invalid_argument unless sum K†K = I within 1e-9.
  KrausChannel(std::vector<ComplexOperator> kraus, std::string label);

  const std::vector<ComplexOperator>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  std::size_t dimension() const { return kraus_.front().dimension(); }
  // max |(sum K†K - I)_ij|
  double completeness_error() const;

 private:
  std::vector<ComplexOperator> kraus_;
  std::string label_;
};

// Amplitude damping on a polarization qubit.
KrausChannel ad_kraus_qubit(double lambda);
// Amplitude damping on a three-level travel mode; the vacuum level |2> is untouched.
KrausChannel ad_kraus_mode(double lambda);
// Generalized amplitude damping, Kraus operators A1..A4.
KrausChannel gad_kraus(const GadParams& params);
// GAD on the three-level mode. The vacuum level picks up sqrt(1-p) from A1 and
// sqrt(p) from A4, so p = 0 coincides with ad_kraus_mode.
KrausChannel gad_kraus_mode(const GadParams& params);

// sum_k K_k rho K_k† with K_k acting on the target subsystem.
ComplexOperator apply_channel(const ComplexOperator& state, const KrausChannel& channel,
                              const std::string& target);

// Trace distance between E[I] and I for a qubit channel, with I unnormalized.
double unitality_deviation(const KrausChannel& channel);

struct WitnessReport {
  bool non_markovian = false;
  // Grid intervals on which lambda strictly decreases.
  std::vector<std::pair<double, double>> revival_intervals;
  std::vector<std::pair<double, double>> samples;  // (t, lambda)
};

// Backflow witness on the grid t_i = t_max * i / (n_points - 1). Under AD the
// trace distance of the |0>,|1> pair is 1 - lambda(t), so a decrease of lambda
// is a revival of distinguishability.
WitnessReport nonmarkov_witness(const DampingParams& params, double t_max, int n_points);

}  // namespace ppqkd
