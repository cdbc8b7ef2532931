#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "invariants.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/geometry.hpp"
#include "oracles.hpp"

using namespace melnikov;
using melnikov::testing::sigma_bisection;

TEST_CASE("sigma on levels with known crossings") {
  CHECK(sigma(EnergyLevel(2), SwitchingCurve::monomial(3)).u() == doctest::Approx(1).epsilon(1e-15));
  CHECK(sigma(EnergyLevel(2), SwitchingCurve::monomial(1)).u() == doctest::Approx(1).epsilon(1e-15));
  const double u = sigma(EnergyLevel(1), SwitchingCurve::monomial(3)).u();
  CHECK(u == doctest::Approx(sigma_bisection(1, 3)).epsilon(1e-14));
  CHECK(u * u + std::pow(u, 6) == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("h_of_u") {
  CHECK(h_of_u(CrossingParameter(1), SwitchingCurve::monomial(3)).h() == 2);
  CHECK(h_of_u(CrossingParameter(2), SwitchingCurve::monomial(1)).h() == 8);
  CHECK(h_of_u(CrossingParameter(0.5), SwitchingCurve::monomial(3)).h() == doctest::Approx(17.0 / 64).epsilon(1e-15));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(EnergyLevel(0), DomainError);
  CHECK_THROWS_AS(EnergyLevel(-1), DomainError);
  CHECK_THROWS_AS(CrossingParameter(0), DomainError);
  CHECK_THROWS_AS(SwitchingCurve::monomial(0), DomainError);
  CHECK_THROWS_AS(SwitchingCurve::reciprocal(2), DomainError);
}

TEST_CASE("phi vanishes at the origin") {
  for (const auto& c : {SwitchingCurve::monomial(1), SwitchingCurve::monomial(2), SwitchingCurve::monomial(3),
                        SwitchingCurve::reciprocal(3)})
    CHECK(c.phi(0.0) == 0.0);
}

TEST_CASE("intersection points") {
  const auto [a3, b3] = intersection_points(EnergyLevel(2), SwitchingCurve::monomial(3));
  CHECK(a3.x() == doctest::Approx(-1));
  CHECK(a3.y() == doctest::Approx(-1));
  CHECK(b3.x() == doctest::Approx(1));
  CHECK(b3.y() == doctest::Approx(1));
  const auto [a2, b2] = intersection_points(EnergyLevel(2), SwitchingCurve::monomial(2));
  CHECK(a2.x() == doctest::Approx(-1));
  CHECK(a2.y() == doctest::Approx(1));
  CHECK(b2.x() == doctest::Approx(1));
  CHECK(b2.y() == doctest::Approx(1));
}

TEST_CASE("arcs of the level h = 2") {
  const double pi = std::numbers::pi;
  for (int m : {1, 3}) {
    const auto [up, low] = arcs(EnergyLevel(2), SwitchingCurve::monomial(m));
    CHECK(up.theta_start == doctest::Approx(5 * pi / 4));
    CHECK(up.theta_end == doctest::Approx(pi / 4));
    CHECK(low.theta_start == doctest::Approx(pi / 4));
    CHECK(low.theta_end == doctest::Approx(-3 * pi / 4));
    CHECK(up.extent() == doctest::Approx(pi).epsilon(1e-15));
  }
  const auto [up, low] = arcs(EnergyLevel(2), SwitchingCurve::monomial(2));
  CHECK(up.extent() + low.extent() == doctest::Approx(2 * pi));
  CHECK(up.extent() == doctest::Approx(pi / 2));
}

TEST_CASE("reciprocal curve section point carries u on the y-axis") {
  const auto c = SwitchingCurve::reciprocal(3);
  const Point p = c.section_point(0.8);
  CHECK(p.y() == 0.8);
  CHECK(p.x() == doctest::Approx(0.512));
  CHECK(c.section_parameter(p) == 0.8);
  CHECK(h_of_u(CrossingParameter(0.8), c).h() == doctest::Approx(p.squaredNorm()));
}

TEST_CASE("geometry invariants") {
  using namespace melnikov::testing;
  for (const auto& r : {check_sigma_round_trip(), check_sigma_closed_form(), check_sigma_monotone(),
                        check_intersections_on_curves(), check_arc_regions()}) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.ok);
  }
}
