#include <doctest.h>

#include <cmath>

#include "ppqkd/information.hpp"

using namespace ppqkd;

namespace {

constexpr double kNoiseless = 0.311278124459;

Distribution2D from(std::size_t r, std::size_t c, std::initializer_list<double> v) {
  Distribution2D d(r, c);
  std::size_t i = 0;
  for (double x : v) d(i / c, i % c) = x, ++i;
  return d;
}

ComplexOperator qubit_diag(double a, double b) {
  const Complex d[] = {a, b};
  return ComplexOperator::diagonal(SystemLayout::flat(2), d);
}

}  // namespace

TEST_SUITE("info-theory") {
  TEST_CASE("shannon entropy") {
    const double fair[] = {0.5, 0.5};
    const double sure[] = {1.0, 0.0, 0.0};
    const double tiny[] = {1.0 - 1e-16, 1e-16};
    CHECK(shannon_entropy(fair) == doctest::Approx(1.0));
    CHECK(shannon_entropy(sure) == 0.0);
    CHECK(shannon_entropy(tiny) < 1e-15);
  }

  TEST_CASE("mutual information") {
    CHECK(mutual_information(from(2, 2, {0.25, 0.25, 0.25, 0.25})) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mutual_information(from(2, 2, {0.5, 0.0, 0.0, 0.5})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(mutual_information(from(2, 2, {0.5, 0.5, 0.5, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(mutual_information(from(1, 2, {1.1, -0.1})), std::invalid_argument);

    const auto ab = marginalize(measure_joint(ProtocolScenario::noiseless()), PartyPair::AB);
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 4);
    CHECK(mutual_information(ab) == doctest::Approx(kNoiseless).epsilon(1e-12));
    CHECK(mutual_information(marginalize(closed_form_joint(Variant::case1_travel_only, 0.5), PartyPair::AB)) ==
          doctest::Approx(0.179635062).epsilon(1e-8));
  }

  TEST_CASE("marginals are consistent") {
    const auto j = measure_joint(ProtocolScenario::case2(0.35));
    const auto ab = marginalize(j, PartyPair::AB), ae = marginalize(j, PartyPair::AE), eb = marginalize(j, PartyPair::EB);
    const auto a1 = ab.row_marginal(), a2 = ae.row_marginal();
    for (std::size_t i = 0; i < 2; ++i) CHECK(a1[i] == doctest::Approx(a2[i]));
    const auto b1 = ab.col_marginal(), b2 = eb.col_marginal();
    for (std::size_t i = 0; i < 4; ++i) CHECK(b1[i] == doctest::Approx(b2[i]));
    CHECK(eb.total() == doctest::Approx(1.0));
  }

  TEST_CASE("holevo bound") {
    const auto r = qubit_diag(0.3, 0.7);
    CHECK(holevo_bound({{0.5, r}, {0.5, r}}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(holevo_bound({{0.5, qubit_diag(1, 0)}, {0.5, qubit_diag(0, 1)}}) == doctest::Approx(1.0));
    CHECK(holevo_bound(eve_ensemble(ProtocolScenario::noiseless())) == doctest::Approx(kNoiseless).epsilon(1e-9));
    CHECK_THROWS_AS(holevo_bound({}), std::invalid_argument);
    CHECK_THROWS_AS(holevo_bound({{0.3, r}, {0.3, r}}), std::invalid_argument);
  }

  TEST_CASE("noiseless key rates vanish") {
    const auto k = key_rates(ProtocolScenario::noiseless());
    CHECK(k.i_ab == doctest::Approx(kNoiseless).epsilon(1e-9));
    CHECK(k.i_ae == doctest::Approx(kNoiseless).epsilon(1e-9));
    CHECK(k.chi_ae == doctest::Approx(kNoiseless).epsilon(1e-9));
    CHECK(std::abs(k.k_min) < 1e-9);
    CHECK(std::abs(k.k_max) < 1e-9);
  }

  TEST_CASE("closed-form expressions") {
    CHECK(closed_form_iae(0.0) == doctest::Approx(kNoiseless).epsilon(1e-12));
    CHECK(std::abs(closed_form_iae(1.0)) < 1e-12);
    CHECK(closed_form_iae(0.5) == doctest::Approx(0.137925381).epsilon(1e-8));
    CHECK(closed_form_iab_case2(0.0) == doctest::Approx(kNoiseless).epsilon(1e-12));
    CHECK(closed_form_iab_case2(1.0) == 0.0);
    CHECK(closed_form_iab_case2(0.5) == doctest::Approx(0.155639062).epsilon(1e-8));
    CHECK_THROWS_AS(closed_form_iae(-0.1), std::invalid_argument);
  }

  TEST_CASE("long case-1 expression disagrees with its table") {
    CHECK(iab_case1_as_printed(0.0) == doctest::Approx(kNoiseless).epsilon(1e-9));
    CHECK(iab_case1_as_printed(0.5) == doctest::Approx(0.304635062).epsilon(1e-8));
    CHECK(iab_case1_as_printed(1.0 - 1e-9) == doctest::Approx(0.25).epsilon(1e-6));
    const auto table = marginalize(closed_form_joint(Variant::case1_travel_only, 0.5), PartyPair::AB);
    CHECK(iab_case1_as_printed(0.5) - mutual_information(table) > 0.1);
  }

  TEST_CASE("simulated rates across lambda") {
    for (int i = 0; i <= 20; ++i) {
      const double l = 0.05 * i;
      CAPTURE(l);
      const auto c1 = key_rates(ProtocolScenario::case1(l));
      const auto c2 = key_rates(ProtocolScenario::case2(l));
      for (const auto& k : {c1, c2}) {
        CHECK(std::abs(k.chi_ae - k.i_ae) < 1e-9);
        CHECK(k.i_ab <= k.chi_ab + 1e-9);
        for (double v : {k.i_ab, k.i_ae, k.chi_ae, k.chi_ab}) {
          CHECK(v >= -1e-12);
          CHECK(v <= 2.0);
        }
        // Eve's information is fixed before Bob's local noise acts.
        CHECK(k.i_ae == doctest::Approx(kNoiseless).epsilon(1e-9));
      }
      CHECK(c2.i_ab == doctest::Approx(closed_form_iab_case2(l)).epsilon(1e-9));
      CHECK(c1.k_max >= c2.k_max - 1e-9);
    }
  }
}
