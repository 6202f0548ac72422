#include "ppqkd/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppqkd {

namespace {

const std::vector<std::string> kAttackTargets{kTravel, kAncillaX, kAncillaY};
constexpr double kSpanTol = 1e-9;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Ket txy(std::size_t t, std::size_t x, std::size_t y) {
  const std::size_t d[] = {t, x, y};
  return Ket::basis(attack_layout(), d);
}

Ket htxy(std::size_t h, std::size_t t, std::size_t x, std::size_t y) {
  const std::size_t d[] = {h, t, x, y};
  return Ket::basis(protocol_layout(), d);
}

void require_bit(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("encoding bit must be 0 or 1");
}

Ket apply_partial_isometry(const ComplexOperator& map, const ComplexOperator& support, const Ket& state,
                           const char* what) {
  const Ket inside = apply_to_subsystems(support, kAttackTargets, state);
  if ((state - inside).norm() > kSpanTol)
    throw std::domain_error(std::string(what) + ": state leaves the attack's span");
  return apply_to_subsystems(map, kAttackTargets, state);
}

}  // namespace

const SystemLayout& protocol_layout() {
  static const SystemLayout layout({{kHome, 2}, {kTravel, 3}, {kAncillaX, 3}, {kAncillaY, 3}});
  return layout;
}

const SystemLayout& attack_layout() {
  static const SystemLayout layout({{kTravel, 3}, {kAncillaX, 3}, {kAncillaY, 3}});
  return layout;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::noiseless: return "noiseless";
    case Variant::case1_travel_only: return "case1_travel_only";
    case Variant::case2_both_qubits: return "case2_both_qubits";
    case Variant::gad_both_qubits: return "gad_both_qubits";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "noiseless") return Variant::noiseless;
  if (name == "case1" || name == "case1_travel_only") return Variant::case1_travel_only;
  if (name == "case2" || name == "case2_both_qubits") return Variant::case2_both_qubits;
  if (name == "gad" || name == "gad_both_qubits") return Variant::gad_both_qubits;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

void ProtocolScenario::validate() const {
  if (variant == Variant::noiseless) return;
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (variant == Variant::gad_both_qubits && !(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("GAD mixing p must lie in [0, 1/2]");
}

// ---------------------------------------------------------------- attack

AttackMap::AttackMap(std::vector<Ket> domain, std::vector<Ket> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (domain_.size() != images_.size() || domain_.empty())
    throw std::invalid_argument("attack map needs matching, nonempty domain and image lists");
  const auto& layout = domain_.front().layout();
  forward_ = ComplexOperator(layout);
  domain_proj_ = ComplexOperator(layout);
  image_proj_ = ComplexOperator(layout);
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(inner(domain_[i], domain_[j]) - expect) > 1e-12 ||
          std::abs(inner(images_[i], images_[j]) - expect) > 1e-12)
        throw std::invalid_argument("attack map domain and images must be orthonormal");
    }
    forward_ += ComplexOperator::outer(images_[i], domain_[i]);
    domain_proj_ += ComplexOperator::projector(domain_[i]);
    image_proj_ += ComplexOperator::projector(images_[i]);
  }
  inverse_ = forward_.adjoint();
}

const AttackMap& wojcik_attack() {
  static const AttackMap map = [] {
    const Ket a = txy(0, 0, 2), b = txy(2, 0, 1), c = txy(2, 1, 0), d = txy(1, 1, 2);
    return AttackMap({txy(0, 2, 0), txy(0, 2, 1), txy(1, 2, 0), txy(1, 2, 1)},
                     {kInvSqrt2 * (a + b), kInvSqrt2 * (a - b), kInvSqrt2 * (c + d), kInvSqrt2 * (c - d)});
  }();
  return map;
}

std::array<Ket, 4> bell_basis() {
  static const SystemLayout ht({{kHome, 2}, {kTravel, 3}});
  auto k = [&](std::size_t h, std::size_t t) {
    const std::size_t d[] = {h, t};
    return Ket::basis(ht, d);
  };
  return {kInvSqrt2 * (k(0, 1) + k(1, 0)), kInvSqrt2 * (k(0, 1) - k(1, 0)),
          kInvSqrt2 * (k(0, 0) + k(1, 1)), kInvSqrt2 * (k(0, 0) - k(1, 1))};
}

// ---------------------------------------------------------------- round

Ket initial_state() { return kInvSqrt2 * (htxy(0, 1, kVacuum, 0) + htxy(1, 0, kVacuum, 0)); }

Ket wojcik_onward(const Ket& state) {
  const auto& q = wojcik_attack();
  return apply_partial_isometry(q.forward(), q.domain_projector(), state, "wojcik_onward");
}

Ket wojcik_return(const Ket& state) {
  const auto& q = wojcik_attack();
  return apply_partial_isometry(q.inverse(), q.image_projector(), state, "wojcik_return");
}

Ket alice_encode(const Ket& state, int bit) {
  require_bit(bit);
  if (bit == 0) return state;
  // sigma_z on polarization, vacuum level unchanged
  const Complex z[] = {1.0, -1.0, 1.0};
  return apply_to_subsystems(ComplexOperator::diagonal(SystemLayout::flat(3), z), {kTravel}, state);
}

Ket returned_state(int bit) { return wojcik_return(alice_encode(wojcik_onward(initial_state()), bit)); }

ComplexOperator bob_add_noise(const ComplexOperator& rho, const ProtocolScenario& scenario) {
  scenario.validate();
  switch (scenario.variant) {
    case Variant::noiseless:
      return rho;
    case Variant::case1_travel_only:
      return apply_channel(rho, ad_kraus_mode(scenario.lambda), kTravel);
    case Variant::case2_both_qubits:
      return apply_channel(apply_channel(rho, ad_kraus_mode(scenario.lambda), kTravel),
                           ad_kraus_qubit(scenario.lambda), kHome);
    case Variant::gad_both_qubits: {
      const GadParams gp{scenario.p, scenario.lambda};
      return apply_channel(apply_channel(rho, gad_kraus_mode(gp), kTravel), gad_kraus(gp), kHome);
    }
  }
  throw std::invalid_argument("unknown scenario variant");
}

ComplexOperator final_state(const ProtocolScenario& scenario, int bit) {
  return bob_add_noise(ComplexOperator::projector(returned_state(bit)), scenario);
}

// ---------------------------------------------------------------- statistics

double JointDistribution::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

double JointDistribution::max_abs_difference(const JointDistribution& other) const {
  double d = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) d = std::max(d, std::abs(p_[i] - other.p_[i]));
  return d;
}

JointDistribution measure_joint(const ProtocolScenario& scenario) {
  scenario.validate();
  const auto bell = bell_basis();
  const SystemLayout y_layout({{kAncillaY, 3}});
  JointDistribution joint;
  for (int bit = 0; bit < 2; ++bit) {
    // x carries no outcome; trace it out before projecting.
    const auto rho = partial_trace(final_state(scenario, bit), {kHome, kTravel, kAncillaY});
    for (std::size_t e = 0; e < JointDistribution::kE; ++e) {
      const std::size_t d[] = {e};
      const Ket eve = Ket::basis(y_layout, d);
      for (std::size_t b = 0; b < JointDistribution::kB; ++b) {
        const Ket v = tensor_product(bell[b], eve);
        double prob = 0.5 * expectation(v, rho, v).real();
        if (prob < -1e-12) throw std::logic_error("measure_joint: negative probability");
        joint(static_cast<std::size_t>(bit), e, b) = std::max(prob, 0.0);
      }
    }
  }
  if (std::abs(joint.total() - 1.0) > 1e-9) throw std::logic_error("measure_joint: distribution is not normalized");
  return joint;
}

JointDistribution closed_form_joint(Variant variant, double lambda) {
  if (variant == Variant::gad_both_qubits) throw std::invalid_argument("no closed-form table for the GAD scenario");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  JointDistribution p;
  const double l = lambda;
  switch (variant) {
    case Variant::noiseless:
      p(0, 0, 0) = 0.5;
      p(1, 0, 0) = p(1, 0, 1) = p(1, 1, 0) = p(1, 1, 1) = 0.125;
      break;
    case Variant::case1_travel_only: {
      const double s = std::sqrt(1 - l);
      p(0, 0, 0) = (s + 1) * (s + 1) / 8;
      p(0, 0, 1) = (s - 1) * (s - 1) / 8;
      p(0, 0, 2) = p(0, 0, 3) = p(1, 0, 2) = p(1, 0, 3) = l / 8;
      p(1, 0, 0) = p(1, 0, 1) = 0.125;
      p(1, 1, 0) = p(1, 1, 1) = (1 - l) / 8;
      break;
    }
    case Variant::case2_both_qubits:
      p(0, 0, 0) = (1 - l) / 2;
      p(0, 0, 2) = p(0, 0, 3) = p(1, 0, 2) = p(1, 0, 3) = l / 4;
      p(1, 0, 0) = p(1, 0, 1) = p(1, 1, 0) = p(1, 1, 1) = (1 - l) / 8;
      break;
    case Variant::gad_both_qubits:
      break;
  }
  return p;
}

Ensemble eve_ensemble(const ProtocolScenario& scenario) {
  Ensemble out;
  for (int bit = 0; bit < 2; ++bit)
    out.push_back({0.5, partial_trace(final_state(scenario, bit), {kAncillaX, kAncillaY})});
  return out;
}

Ensemble bob_ensemble(const ProtocolScenario& scenario) {
  Ensemble out;
  for (int bit = 0; bit < 2; ++bit)
    out.push_back({0.5, partial_trace(final_state(scenario, bit), {kHome, kTravel})});
  return out;
}

}  // namespace ppqkd
