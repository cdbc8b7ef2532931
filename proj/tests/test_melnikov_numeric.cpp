#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "generators.hpp"
#include "invariants.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/melnikov_numeric.hpp"
#include "melnikov/quadrature.hpp"
#include "oracles.hpp"

using namespace melnikov;

TEST_CASE("adaptive Gauss-Kronrod") {
  const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13, 1e-13);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  const auto back = integrate_adaptive([](double x) { return x * x; }, 1.0, 0.0, 1e-13, 1e-13);
  CHECK(back.value == doctest::Approx(-1.0 / 3).epsilon(1e-14));
  const auto peak = integrate_adaptive([](double x) { return 1e-4 / (x * x + 1e-8); }, -1.0, 1.0, 1e-10, 1e-12);
  CHECK(peak.value == doctest::Approx(2e-4 * std::atan(1e4) / 1e-4).epsilon(1e-10));
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1 / std::sqrt(std::abs(x)); }, -1.0, 1.0, 1e-14, 1e-14, 8),
                  AccuracyError);
}

TEST_CASE("line integrals of the level h = 2 on y = x^3") {
  const auto [up, low] = arcs(EnergyLevel(2), SwitchingCurve::monomial(3));
  CHECK(line_integral_monomial(up, 0, 0, Form::Dx) == doctest::Approx(2).epsilon(1e-12));
  CHECK(std::abs(line_integral_monomial(up, 1, 0, Form::Dx)) < 1e-12);
  CHECK(line_integral_monomial(up, 0, 1, Form::Dx) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("line integrals agree with direct quadrature") {
  for (double h : {0.2, 1.0, 3.0}) {
    const auto [up, low] = arcs(EnergyLevel(h), SwitchingCurve::monomial(3));
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; i + j <= 5; ++j) {
        const double J = testing::J_direct(i, j, h);
        const double I = testing::I_direct(i, j, h);
        CHECK(line_integral_monomial(up, i, j, Form::Dx) == doctest::Approx(J).epsilon(1e-11).scale(1));
        CHECK(line_integral_monomial(low, i, j, Form::Dx) == doctest::Approx(I).epsilon(1e-11).scale(1));
      }
  }
}

TEST_CASE("ratio factor") {
  const PiecewisePerturbation zero(1);
  auto sys = GeneralPiecewiseSystem::linear_center(zero, SwitchingCurve::monomial(3));
  CHECK(ratio_factor(sys, EnergyLevel(0.7)) == doctest::Approx(1));
  auto sys1 = GeneralPiecewiseSystem::linear_center(zero, SwitchingCurve::monomial(1));
  CHECK(ratio_factor(sys1, EnergyLevel(1)) == doctest::Approx(1));
  sys.hamiltonian_minus = [](double x, double y) { return x * x + y * y; };
  sys.gradient_minus = [](double x, double y) { return Eigen::Vector2d(2 * x, 2 * y); };
  CHECK(ratio_factor(sys, EnergyLevel(2)) == doctest::Approx(0.5));
  sys.gradient_minus = [](double, double) { return Eigen::Vector2d(0, 0); };
  CHECK_THROWS_AS(ratio_factor(sys, EnergyLevel(2)), TangencyError);
}

TEST_CASE("zero perturbation has zero Melnikov function") {
  const PiecewisePerturbation zero(3);
  for (double h : {0.1, 1.0, 5.0}) CHECK(melnikov_numeric(zero, SwitchingCurve::monomial(3), EnergyLevel(h)) == 0.0);
}

TEST_CASE("perturbation-based and system-based evaluations agree") {
  testing::Gen gen(31);
  for (int k = 0; k < 5; ++k) {
    const auto pert = gen.perturbation(3);
    for (const auto& curve : {SwitchingCurve::monomial(3), SwitchingCurve::monomial(2)}) {
      const auto sys = GeneralPiecewiseSystem::linear_center(pert, curve);
      const double h = gen.log_uniform(0.1, 10);
      CHECK(melnikov_numeric(sys, EnergyLevel(h)) ==
            doctest::Approx(melnikov_numeric(pert, curve, EnergyLevel(h))).epsilon(1e-10));
    }
  }
}

TEST_CASE("quadrature Melnikov function against the direct oracle on several curves") {
  testing::Gen gen(32);
  for (int m : {1, 2, 3, 5})
    for (int k = 0; k < 5; ++k) {
      const auto pert = gen.perturbation(3);
      const double h = gen.log_uniform(0.1, 5);
      const double direct = testing::melnikov_direct_monomial(pert, m, h);
      CHECK(melnikov_numeric(pert, SwitchingCurve::monomial(m), EnergyLevel(h)) ==
            doctest::Approx(direct).epsilon(1e-9).scale(1));
    }
}

TEST_CASE("reciprocal curve through the mirror map equals direct quadrature on y = x^(1/3)") {
  testing::Gen gen(33);
  const auto curve = SwitchingCurve::reciprocal(3);
  for (int k = 0; k < 10; ++k) {
    const auto pert = gen.perturbation(gen.integer(1, 3));
    const double u = gen.uniform(0.2, 1.8);
    const double direct = testing::melnikov_direct_reciprocal(pert, 3, u);
    CHECK(melnikov_numeric(pert, curve, h_of_u(CrossingParameter(u), curve)) ==
          doctest::Approx(direct).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("numeric invariants") {
  using namespace melnikov::testing;
  for (const auto& r : {check_gradient_consistency(), check_parity_identities()}) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.ok);
  }
}
