#include <doctest.h>

#include <cmath>

#include "ppqkd/protocol.hpp"

using namespace ppqkd;

namespace {

Ket htxy(std::size_t h, std::size_t t, std::size_t x, std::size_t y) {
  const std::size_t d[] = {h, t, x, y};
  return Ket::basis(protocol_layout(), d);
}

double amp(const Ket& k, std::size_t h, std::size_t t, std::size_t x, std::size_t y) {
  const std::size_t d[] = {h, t, x, y};
  return k[protocol_layout().index(d)].real();
}

JointDistribution ab_only(const JointDistribution& j) {
  JointDistribution out;
  for (std::size_t a = 0; a < JointDistribution::kA; ++a)
    for (std::size_t b = 0; b < JointDistribution::kB; ++b)
      for (std::size_t e = 0; e < JointDistribution::kE; ++e) out(a, 0, b) += j(a, e, b);
  return out;
}

double eve_mass(const JointDistribution& j, std::size_t a, std::size_t e) {
  double s = 0.0;
  for (std::size_t b = 0; b < JointDistribution::kB; ++b) s += j(a, e, b);
  return s;
}

const double kR = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_SUITE("pingpong-protocol") {
  TEST_CASE("initial state") {
    const auto psi = initial_state();
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amp(psi, 0, 1, 2, 0) == doctest::Approx(kR));
    CHECK(amp(psi, 1, 0, 2, 0) == doctest::Approx(kR));
    const auto red = partial_trace(ComplexOperator::projector(psi), {kHome});
    CHECK(std::abs(red(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(red(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(red(0, 1)) < 1e-15);
  }

  TEST_CASE("scenario parsing and validation") {
    CHECK(parse_variant("case1") == Variant::case1_travel_only);
    CHECK(parse_variant(to_string(Variant::gad_both_qubits)) == Variant::gad_both_qubits);
    CHECK_THROWS_AS(parse_variant("case3"), std::invalid_argument);
    CHECK_NOTHROW(ProtocolScenario::gad(0.5, 1.0).validate());
    CHECK_THROWS_AS(ProtocolScenario::case1(1.2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ProtocolScenario::gad(0.7, 0.2).validate(), std::invalid_argument);
  }

  TEST_CASE("attack map is a partial isometry") {
    const auto& q = wojcik_attack();
    CHECK((q.inverse() * q.forward() - q.domain_projector()).max_abs() < 1e-15);
    CHECK((q.forward() * q.inverse() - q.image_projector()).max_abs() < 1e-15);
    CHECK(q.domain_projector().trace().real() == doctest::Approx(4.0));
    CHECK_THROWS_AS(AttackMap({htxy(0, 0, 0, 0), htxy(0, 0, 0, 0)}, {htxy(0, 1, 0, 0), htxy(0, 0, 1, 0)}),
                    std::invalid_argument);
  }

  TEST_CASE("onward leg") {
    const auto out = wojcik_onward(initial_state());
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto expect = 0.5 * (htxy(0, 2, 1, 0) + htxy(0, 1, 1, 2) + htxy(1, 0, 0, 2) + htxy(1, 2, 0, 1));
    CHECK((out - expect).norm() < 1e-15);
    CHECK_THROWS_AS(wojcik_onward(htxy(0, 0, 0, 0)), std::domain_error);
    CHECK_THROWS_AS(wojcik_return(htxy(0, 0, 0, 0)), std::domain_error);
  }

  TEST_CASE("encoding") {
    const auto s = wojcik_onward(initial_state());
    CHECK((alice_encode(s, 0) - s).norm() == 0.0);
    const auto z = alice_encode(s, 1);
    CHECK(amp(z, 0, 1, 1, 2) == doctest::Approx(-0.5));
    CHECK(amp(z, 1, 2, 0, 1) == doctest::Approx(0.5));
    CHECK(amp(z, 1, 0, 0, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(alice_encode(s, 2), std::invalid_argument);
  }

  TEST_CASE("noiseless round") {
    const auto r0 = returned_state(0), r1 = returned_state(1);
    CHECK((r0 - kR * (htxy(0, 1, 2, 0) + htxy(1, 0, 2, 0))).norm() < 1e-14);
    CHECK((r1 - kR * (htxy(0, 1, 2, 1) + htxy(1, 0, 2, 0))).norm() < 1e-14);
    // Support lies in span{|000>,|010>,|100>,|011>}_hty with x in the vacuum.
    for (const auto& r : {r0, r1}) {
      Ket inside = r;
      for (auto [h, t, y] : {std::array<std::size_t, 3>{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 1}})
        inside -= inner(htxy(h, t, 2, y), r) * htxy(h, t, 2, y);
      CHECK(inside.norm() < 1e-12);
    }
  }

  TEST_CASE("noise at lambda 0 changes nothing") {
    for (Variant v : {Variant::case1_travel_only, Variant::case2_both_qubits, Variant::gad_both_qubits}) {
      const ProtocolScenario s{v, 0.0, 0.0};
      const auto rho = ComplexOperator::projector(returned_state(1));
      CHECK((bob_add_noise(rho, s) - rho).max_abs() < 1e-15);
    }
  }

  TEST_CASE("noiseless statistics match the reference table") {
    const auto sim = measure_joint(ProtocolScenario::noiseless());
    CHECK(sim(0, 0, 0) == doctest::Approx(0.5));
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t b = 0; b < 2; ++b) CHECK(sim(1, e, b) == doctest::Approx(0.125));
    CHECK(sim.max_abs_difference(closed_form_joint(Variant::noiseless, 0.0)) < 1e-12);
    for (Variant v : {Variant::case1_travel_only, Variant::case2_both_qubits})
      CHECK(measure_joint({v, 0.0, 0.0}).max_abs_difference(closed_form_joint(v, 0.0)) < 1e-12);
  }

  TEST_CASE("closed-form tables") {
    const auto c1 = closed_form_joint(Variant::case1_travel_only, 1.0);
    for (std::size_t b : {0u, 1u, 2u, 3u}) CHECK(c1(0, 0, b) == doctest::Approx(0.125));
    CHECK(c1(1, 1, 0) == 0.0);
    CHECK(c1.total() == doctest::Approx(1.0));
    const auto c2 = closed_form_joint(Variant::case2_both_qubits, 0.5);
    CHECK(c2(0, 0, 0) == doctest::Approx(0.25));
    CHECK(c2(0, 0, 2) == doctest::Approx(0.125));
    CHECK(c2(1, 0, 3) == doctest::Approx(0.125));
    CHECK(c2(1, 1, 1) == doctest::Approx(0.0625));
    CHECK_THROWS_AS(closed_form_joint(Variant::gad_both_qubits, 0.5), std::invalid_argument);
  }

  TEST_CASE("Alice-Bob statistics match the closed forms for every lambda") {
    for (int i = 0; i <= 20; ++i) {
      const double l = 0.05 * i;
      for (Variant v : {Variant::case1_travel_only, Variant::case2_both_qubits}) {
        CAPTURE(l);
        const auto sim = ab_only(measure_joint({v, l, 0.0}));
        CHECK(sim.max_abs_difference(ab_only(closed_form_joint(v, l))) < 1e-12);
      }
    }
  }

  TEST_CASE("Bob's noise cannot move Eve's marginal") {
    const auto ref = measure_joint(ProtocolScenario::noiseless());
    for (double l : {0.2, 0.5, 1.0})
      for (const auto& s : {ProtocolScenario::case1(l), ProtocolScenario::case2(l), ProtocolScenario::gad(0.3, l)}) {
        const auto sim = measure_joint(s);
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t e = 0; e < 3; ++e) CHECK(std::abs(eve_mass(sim, a, e) - eve_mass(ref, a, e)) < 1e-12);
      }
  }

  TEST_CASE("distribution sanity for all variants") {
    for (double l : {0.0, 0.3, 0.7, 1.0})
      for (const auto& s : {ProtocolScenario::case1(l), ProtocolScenario::case2(l), ProtocolScenario::gad(0.2, l),
                            ProtocolScenario::gad(0.5, l)}) {
        const auto j = measure_joint(s);
        CHECK(std::abs(j.total() - 1.0) < 1e-12);
        for (std::size_t a = 0; a < 2; ++a) CHECK(eve_mass(j, a, 2) < 1e-9);
        for (double v : j.values()) CHECK(v >= 0.0);
      }
  }

  TEST_CASE("ensembles") {
    const auto s = ProtocolScenario::case2(0.4);
    for (const auto& ens : {eve_ensemble(s), bob_ensemble(s)}) {
      REQUIRE(ens.size() == 2);
      for (const auto& m : ens) {
        CHECK(m.prob == doctest::Approx(0.5));
        CHECK(std::abs(m.rho.trace() - 1.0) < 1e-12);
        CHECK(m.rho.hermiticity_error() < 1e-14);
      }
    }
    // Eve's state for bit 1 is an even mixture of two orthogonal pure states.
    const auto e1 = hermitian_eigenvalues(eve_ensemble(ProtocolScenario::noiseless())[1].rho);
    CHECK(e1[0] == doctest::Approx(0.5));
    CHECK(e1[1] == doctest::Approx(0.5));
  }
}
