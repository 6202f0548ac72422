#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ppqkd/channels.hpp"

using namespace ppqkd;

namespace {

ComplexOperator diag(std::initializer_list<Complex> d, const char* label = "q") {
  std::vector<Complex> v(d);
  return ComplexOperator::diagonal(SystemLayout::flat(v.size(), label), v);
}

double min_eigenvalue(const ComplexOperator& m) { return hermitian_eigenvalues(m).back(); }

}  // namespace

TEST_SUITE("noise-channels") {
  TEST_CASE("jc_damping spot values") {
    const DampingParams slow(1.0, 0.1), fast(1.0, 4.0);
    CHECK(jc_damping(slow, 0.0) == 0.0);
    // Hand evaluation of 1 - G^2 with l = sqrt(0.8) gives 0.0363100.
    CHECK(jc_damping(slow, 1.0) == doctest::Approx(0.036310034).epsilon(1e-8));

    const double root = 2.0 * (M_PI - std::atan(std::sqrt(7.0))) / std::sqrt(7.0);
    CHECK(root == doctest::Approx(1.4605783).epsilon(1e-7));
    CHECK(jc_damping(fast, root) == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(DampingParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DampingParams(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(jc_damping(slow, -0.1), std::invalid_argument);
  }

  TEST_CASE("jc_damping agrees with direct integration of the amplitude ODE") {
    for (double gamma : {0.1, 0.5, 4.0, 15.0})
      for (double t : {0.3, 1.0, 2.5, 4.0}) {
        CAPTURE(gamma);
        CAPTURE(t);
        CHECK(std::abs(jc_damping(DampingParams(1.0, gamma), t) - oracle::damping_by_ode(1.0, gamma, t)) < 1e-8);
      }
    CHECK(std::abs(jc_damping(DampingParams(2.0, 3.0), 0.7) - oracle::damping_by_ode(2.0, 3.0, 0.7)) < 1e-8);
  }

  TEST_CASE("regimes and continuity across l = 0") {
    CHECK(DampingParams(1.0, 0.1).regime() == DampingRegime::markovian_like);
    CHECK(DampingParams(1.0, 0.5).regime() == DampingRegime::critical);
    CHECK(DampingParams(1.0, 4.0).regime() == DampingRegime::non_markovian);
    const DampingParams below(1.0, 0.5 - 1e-6), at(1.0, 0.5), above(1.0, 0.5 + 1e-6);
    for (int i = 0; i <= 400; ++i) {
      const double t = 0.01 * i;
      CHECK(std::abs(jc_damping(below, t) - jc_damping(above, t)) < 1e-4);
      CHECK(std::abs(jc_damping(at, t) - jc_damping(above, t)) < 1e-4);
    }
  }

  TEST_CASE("overdamped schedule is non-decreasing") {
    for (double gamma : {0.05, 0.1, 0.3, 0.49}) {
      const DampingParams p(1.0, gamma);
      double prev = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double l = jc_damping(p, 4.0 * i / 1000.0);
        CHECK(l >= prev - 1e-15);
        CHECK(l <= 1.0);
        prev = l;
      }
    }
  }

  TEST_CASE("qubit amplitude damping") {
    CHECK(ad_kraus_qubit(0.3).completeness_error() < 1e-12);
    const auto id = ad_kraus_qubit(0.0);
    std::mt19937_64 rng(1);
    const auto rho = ComplexOperator(SystemLayout::flat(2, "q"), oracle::random_density(2, rng).entries());
    CHECK((apply_channel(rho, id, "q") - rho).max_abs() < 1e-15);

    CHECK((apply_channel(diag({0, 1}), ad_kraus_qubit(1.0), "q") - diag({1, 0})).max_abs() < 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    const Ket plus(SystemLayout::flat(2, "q"), {s, s});
    const auto out = apply_channel(ComplexOperator::projector(plus), ad_kraus_qubit(0.5), "q");
    CHECK(out(0, 0).real() == doctest::Approx(0.75));
    CHECK(out(1, 1).real() == doctest::Approx(0.25));
    CHECK(out(0, 1).real() == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));

    CHECK_THROWS_AS(ad_kraus_qubit(1.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_channel(diag({1, 0, 0}), ad_kraus_qubit(0.1), "q"), std::invalid_argument);
  }

  TEST_CASE("three-level mode damping leaves the vacuum alone") {
    const auto ch = ad_kraus_mode(0.6);
    CHECK(ch.completeness_error() < 1e-12);
    CHECK((apply_channel(diag({0, 0, 1}), ch, "q") - diag({0, 0, 1})).max_abs() < 1e-15);
    CHECK((apply_channel(diag({0, 1, 0}), ad_kraus_mode(1.0), "q") - diag({1, 0, 0})).max_abs() < 1e-15);
    const auto rho = diag({0.2, 0.3, 0.5});
    CHECK((apply_channel(rho, ad_kraus_mode(0.0), "q") - rho).max_abs() < 1e-15);
  }

  TEST_CASE("damping composes multiplicatively in 1 - lambda") {
    std::mt19937_64 rng(4);
    const auto rho = ComplexOperator(SystemLayout::flat(2, "q"), oracle::random_density(2, rng).entries());
    const double a = 0.3, b = 0.45;
    const auto twice = apply_channel(apply_channel(rho, ad_kraus_qubit(a), "q"), ad_kraus_qubit(b), "q");
    const auto once = apply_channel(rho, ad_kraus_qubit(1.0 - (1.0 - a) * (1.0 - b)), "q");
    CHECK((twice - once).max_abs() < 1e-14);
  }

  TEST_CASE("generalized amplitude damping") {
    for (double p : {0.0, 0.2, 0.5})
      for (double l : {0.0, 0.4, 1.0}) {
        CHECK(gad_kraus({p, l}).completeness_error() < 1e-12);
        CHECK(gad_kraus_mode({p, l}).completeness_error() < 1e-12);
      }
    std::mt19937_64 rng(8);
    const auto rho = ComplexOperator(SystemLayout::flat(2, "q"), oracle::random_density(2, rng).entries());
    CHECK((apply_channel(rho, gad_kraus({0.0, 0.35}), "q") - apply_channel(rho, ad_kraus_qubit(0.35), "q"))
              .max_abs() < 1e-15);
    const auto mixed = diag({0.5, 0.5});
    CHECK((apply_channel(mixed, gad_kraus({0.5, 1.0}), "q") - mixed).max_abs() < 1e-15);

    const auto rho3 = ComplexOperator(SystemLayout::flat(3, "q"), oracle::random_density(3, rng).entries());
    CHECK((apply_channel(rho3, gad_kraus_mode({0.0, 0.35}), "q") - apply_channel(rho3, ad_kraus_mode(0.35), "q"))
              .max_abs() < 1e-15);
    CHECK_THROWS_AS(gad_kraus({0.6, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(gad_kraus({0.1, -0.1}), std::invalid_argument);
  }

  TEST_CASE("channels keep states physical") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SystemLayout l({{"h", 2}, {"t", 3}});
    for (int k = 0; k < 25; ++k) {
      const auto rho = ComplexOperator(l, oracle::random_density(6, rng).entries());
      const double lambda = u(rng), p = 0.5 * u(rng);
      for (const auto& [ch, target] : {std::pair{ad_kraus_mode(lambda), "t"}, std::pair{gad_kraus({p, lambda}), "h"},
                                       std::pair{gad_kraus_mode({p, lambda}), "t"}}) {
        const auto out = apply_channel(rho, ch, target);
        CHECK(std::abs(out.trace() - rho.trace()) < 1e-12);
        CHECK(out.hermiticity_error() < 1e-14);
        CHECK(min_eigenvalue(out) > -1e-9);
      }
    }
  }

  TEST_CASE("kraus validation") {
    CHECK_THROWS_AS(KrausChannel({diag({1, 0.5})}, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(KrausChannel({}, "empty"), std::invalid_argument);
    CHECK_THROWS_AS(KrausChannel({diag({1, 1}), diag({0, 0, 0})}, "mixed"), std::invalid_argument);
  }

  TEST_CASE("unitality deviation") {
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; j <= 5; ++j) {
        const double p = 0.1 * i, l = 0.2 * j;
        CHECK(std::abs(unitality_deviation(gad_kraus({p, l})) - std::abs(1.0 - 2.0 * p) * l) < 1e-12);
      }
    CHECK(unitality_deviation(gad_kraus({0.0, 0.3})) == doctest::Approx(0.3));
    CHECK(unitality_deviation(gad_kraus({0.5, 0.9})) < 1e-12);

    const double c = std::cos(0.4), s = std::sin(0.4);
    const KrausChannel rotation({ComplexOperator(SystemLayout::flat(2), {c, -s, s, c})}, "rot");
    CHECK(unitality_deviation(rotation) < 1e-15);
    CHECK_THROWS_AS(unitality_deviation(ad_kraus_mode(0.2)), std::invalid_argument);
  }

  TEST_CASE("backflow witness") {
    CHECK_FALSE(nonmarkov_witness(DampingParams(1.0, 0.1), 4.0, 400).non_markovian);
    CHECK(nonmarkov_witness(DampingParams(1.0, 0.1), 4.0, 400).revival_intervals.empty());

    const auto fast = nonmarkov_witness(DampingParams(1.0, 4.0), 4.0, 400);
    REQUIRE(fast.non_markovian);
    CHECK(std::abs(fast.revival_intervals.front().first - 1.4606) < 0.02);

    const auto faster = nonmarkov_witness(DampingParams(1.0, 15.0), 4.0, 400);
    CHECK(faster.non_markovian);
    CHECK(faster.revival_intervals.size() >= 2);
    CHECK(faster.samples.size() == 400);

    CHECK_THROWS_AS(nonmarkov_witness(DampingParams(1.0, 1.0), 0.0, 400), std::invalid_argument);
  }
}
