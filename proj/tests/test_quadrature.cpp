#include <doctest.h>

#include <cmath>

#include "geodecay/common.hpp"
#include "geodecay/quadrature.hpp"

using namespace geodecay;

TEST_CASE("polynomials are integrated to machine accuracy") {
  CHECK(integrate([](double t) { return t * t; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, -2.0, 5.0) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrands reach the requested tolerance") {
  const double got = integrate([](double t) { return std::exp(-t * t); }, 0.0, 10.0, 1e-12);
  CHECK(got == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));

  const double arctan = integrate([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1e4, 1e-12);
  CHECK(arctan == doctest::Approx(std::atan(1e4)).epsilon(1e-11));
}

TEST_CASE("kinked integrands converge once the kink is declared") {
  auto f = [](double t) { return std::abs(t - 0.3); };
  const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
  CHECK(integrate_with_kinks(f, 0.0, 1.0, {0.3}, 1e-13) ==
        doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("reversed bounds flip the sign") {
  const double fwd = integrate([](double t) { return t; }, 0.0, 2.0);
  const double bwd = integrate([](double t) { return t; }, 2.0, 0.0);
  CHECK(fwd == doctest::Approx(-bwd).epsilon(1e-15));
}

TEST_CASE("unit ball volumes match the closed forms") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
  CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(5) == doctest::Approx(8.0 * M_PI * M_PI / 15.0).epsilon(1e-15));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("deterministic rng reproduces its stream") {
  DeterministicRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  DeterministicRng a2(42), c(43);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs = differs || (a2.uniform() != c.uniform());
  CHECK(differs);
}
