#pragma once

// Ping-pong round under the two-ancilla individual attack, with trusted noise added by Bob
// before his Bell measurement.
//
// Space: h (home qubit, dim 2) ⊗ t (travel mode) ⊗ x ⊗ y (Eve's ancillas).
// t, x and y are three-level modes whose level |2> is the vacuum.

#include <array>
#include <string>
#include <vector>

#include "ppqkd/channels.hpp"
#include "ppqkd/linalg.hpp"

namespace ppqkd {

inline const std::string kHome = "h";
inline const std::string kTravel = "t";
inline const std::string kAncillaX = "x";
inline const std::string kAncillaY = "y";
inline constexpr std::size_t kVacuum = 2;

const SystemLayout& protocol_layout();  // [(h,2),(t,3),(x,3),(y,3)]
const SystemLayout& attack_layout();    // [(t,3),(x,3),(y,3)]

enum class Variant { noiseless, case1_travel_only, case2_both_qubits, gad_both_qubits };

std::string to_string(Variant v);
// Accepts the names produced by to_string plus the short forms case1/case2/gad.
Variant parse_variant(const std::string& name);

struct ProtocolScenario {
  Variant variant = Variant::noiseless;
  double lambda = 0.0;  // damping, ignored when noiseless
  double p = 0.0;       // GAD mixing, gad_both_qubits only

  static ProtocolScenario noiseless() { return {}; }
  static ProtocolScenario case1(double lambda) { return {Variant::case1_travel_only, lambda, 0.0}; }
  static ProtocolScenario case2(double lambda) { return {Variant::case2_both_qubits, lambda, 0.0}; }
  static ProtocolScenario gad(double p, double lambda) { return {Variant::gad_both_qubits, lambda, p}; }

  // Throws std::invalid_argument when parameters are out of range for the variant.
  void validate() const;
};

// Partial isometry on t⊗x⊗y given by its action on four domain kets.
class AttackMap {
 public:
  AttackMap(std::vector<Ket> domain, std::vector<Ket> images);

  const std::vector<Ket>& domain() const { return domain_; }
  const std::vector<Ket>& images() const { return images_; }

  // Q and Q† as operators on t⊗x⊗y; zero outside the domain/image span.
  const ComplexOperator& forward() const { return forward_; }
  const ComplexOperator& inverse() const { return inverse_; }
  const ComplexOperator& domain_projector() const { return domain_proj_; }
  const ComplexOperator& image_projector() const { return image_proj_; }

 private:
  std::vector<Ket> domain_;
  std::vector<Ket> images_;
  ComplexOperator forward_, inverse_, domain_proj_, image_proj_;
};

// |020> -> (|002> + |201>)/√2, |021> -> (|002> - |201>)/√2,
// |120> -> (|210> + |112>)/√2, |121> -> (|210> - |112>)/√2.
const AttackMap& wojcik_attack();

// Bell basis on the polarization subspace of h⊗t, order ψ+, ψ-, φ+, φ-.
std::array<Ket, 4> bell_basis();

Ket initial_state();
// Both throw std::domain_error if the t⊗x⊗y part leaves the domain (resp.
// image) span by more than 1e-9.
Ket wojcik_onward(const Ket& state);
Ket wojcik_return(const Ket& state);
Ket alice_encode(const Ket& state, int bit);

// State Bob holds after the return leg, before his own noise.
Ket returned_state(int bit);
ComplexOperator bob_add_noise(const ComplexOperator& rho, const ProtocolScenario& scenario);
ComplexOperator final_state(const ProtocolScenario& scenario, int bit);

// P[A][E][B]: A = Alice's bit, E = Eve's y-mode outcome, B = Bell outcome.
class JointDistribution {
 public:
  static constexpr std::size_t kA = 2, kE = 3, kB = 4;

  double operator()(std::size_t a, std::size_t e, std::size_t b) const { return p_[flat(a, e, b)]; }
  double& operator()(std::size_t a, std::size_t e, std::size_t b) { return p_[flat(a, e, b)]; }

  double total() const;
  double max_abs_difference(const JointDistribution& other) const;
  const std::array<double, kA * kE * kB>& values() const { return p_; }

 private:
  static std::size_t flat(std::size_t a, std::size_t e, std::size_t b) { return (a * kE + e) * kB + b; }
  std::array<double, kA * kE * kB> p_{};
};

// Simulated statistics, Alice's bit uniform.
JointDistribution measure_joint(const ProtocolScenario& scenario);

// Analytic tables for noiseless, case 1 and case 2. Throws std::invalid_argument
// for the GAD variant, which has no closed form.
JointDistribution closed_form_joint(Variant variant, double lambda);

struct EnsembleMember {
  double prob;
  ComplexOperator rho;
};
using Ensemble = std::vector<EnsembleMember>;

// Eve's states on x⊗y and Bob's states on h⊗t for Alice's two encodings.
Ensemble eve_ensemble(const ProtocolScenario& scenario);
Ensemble bob_ensemble(const ProtocolScenario& scenario);

}  // namespace ppqkd
