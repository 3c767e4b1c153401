#include <doctest.h>

#include <cmath>

#include "geodecay/common.hpp"
#include "geodecay/model_manifold.hpp"

using namespace geodecay;

namespace {
double euler2_h1(double t) { return ((1 + t) * (1 + t) - 1.0 / (1 + t)) / 3.0; }
}

TEST_CASE("euclidean volumes and areas match closed forms") {
  const auto m2 = ModelManifold::euclidean(2);
  CHECK(sphere_area(m2, 1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(ball_volume(m2, 1.0) == doctest::Approx(M_PI).epsilon(1e-12));

  const auto m3 = ModelManifold::euclidean(3);
  CHECK(ball_volume(m3, 2.0) == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(sphere_area(m3, 2.0) == doctest::Approx(16.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("comparison-warp volume matches the antiderivative oracle") {
  const auto p = make_profile(ProfileKind::euler, {2.0});
  const auto m = ModelManifold::comparison(2, p, 5.0);
  // integral of h1 over [0,1] in closed form: ((1+t)^3/3 - log(1+t))/3
  const double exact = (((8.0 / 3.0) - std::log(2.0)) - 1.0 / 3.0) / 3.0;
  CHECK(ball_volume(m, 1.0) == doctest::Approx(2.0 * M_PI * exact).epsilon(1e-10));
  CHECK(m.warp(1.0) == doctest::Approx(7.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("sphere area is the derivative of ball volume") {
  const auto p = make_profile(ProfileKind::rational, {0.8});
  const auto m = ModelManifold::comparison(3, p, 6.0);
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const double h = 1e-5;
    const double dv = (ball_volume(m, r + h, 1e-12) - ball_volume(m, r - h, 1e-12)) / (2.0 * h);
    CHECK(sphere_area(m, r) == doctest::Approx(dv).epsilon(1e-7));
  }
}

TEST_CASE("ricci decay check: euclidean vs zero passes with zero margin") {
  const auto m = ModelManifold::euclidean(2);
  const auto rep = ricci_decay_check(m, make_profile(ProfileKind::zero, {}), 10.0);
  CHECK(rep.passed());
  CHECK(rep.spherical_ok);
  CHECK(rep.radial_margin == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.spherical_margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ricci decay check: comparison warp against dominating profile") {
  const auto weak = make_profile(ProfileKind::rational, {0.5});
  const auto strong = make_profile(ProfileKind::rational, {1.0});
  const auto m = ModelManifold::comparison(2, weak, 20.0);
  CHECK(ricci_decay_check(m, strong, 10.0).passed());
  // equality case: same profile, zero margin through the analytic second
  // derivative of the warp
  const auto eq = ricci_decay_check(m, weak, 10.0);
  CHECK(eq.passed());
  CHECK(eq.radial_margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ricci decay check: curved warp against the zero profile fails early") {
  const auto p = make_profile(ProfileKind::euler, {2.0});
  const auto m = ModelManifold::comparison(2, p, 10.0);
  const auto rep = ricci_decay_check(m, make_profile(ProfileKind::zero, {}), 5.0);
  CHECK(!rep.passed());
  CHECK(rep.radial_margin < 0.0);
  CHECK(rep.first_violation_r < 0.01);
}

TEST_CASE("bishop-gromov: matched warp gives ratio one and theta one") {
  const auto p = make_profile(ProfileKind::rational, {1.0});
  const auto m = ModelManifold::comparison(2, p, 1000.0);
  const auto bg = bishop_gromov_ratio(m, p, geometric_grid(0.1, 1000.0, 120));
  for (double r : bg.ratio) CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bg.avr.theta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bg.avr.monotone_violation <= 1e-10);
}

TEST_CASE("bishop-gromov: euclidean model under strong decay loses all volume") {
  const auto p = make_profile(ProfileKind::euler, {2.0});
  const auto m = ModelManifold::euclidean(2);
  const auto bg = bishop_gromov_ratio(m, p, geometric_grid(0.1, 1000.0, 120));
  // oracle: h1 ~ t^2/3, so the comparison volume grows one order faster
  CHECK(bg.avr.theta < 0.01);
  CHECK(bg.avr.monotone_violation <= 1e-10);
  double prev = 2.0;
  for (double r : bg.ratio) {
    CHECK(r <= prev + 1e-10);
    prev = r;
  }
}

TEST_CASE("bishop-gromov: mixed pair sits strictly between zero and one") {
  const auto warp_p = make_profile(ProfileKind::rational, {0.5});
  const auto decay_p = make_profile(ProfileKind::rational, {1.0});
  const auto m = ModelManifold::comparison(2, warp_p, 1000.0);
  const auto bg = bishop_gromov_ratio(m, decay_p, geometric_grid(0.1, 1000.0, 120));
  CHECK(bg.avr.theta > 0.0);
  CHECK(bg.avr.theta < 1.0);
  CHECK(bg.avr.monotone_violation <= 1e-10);
  // regression baseline at this horizon and grid
  CHECK(bg.avr.theta == doctest::Approx(0.202513225059635).epsilon(1e-6));
}

TEST_CASE("bishop-gromov refuses pairs that violate the decay condition") {
  const auto p = make_profile(ProfileKind::euler, {2.0});
  const auto m = ModelManifold::comparison(2, p, 50.0);
  CHECK_THROWS_AS(
      bishop_gromov_ratio(m, make_profile(ProfileKind::zero, {}), geometric_grid(0.1, 10.0, 20)),
      std::invalid_argument);
}

TEST_CASE("tabulated warps reproduce curvature within stencil accuracy") {
  const auto p = make_profile(ProfileKind::euler, {2.0});
  const auto ref = ModelManifold::comparison(2, p, 4.0);
  const double h = 1e-3;
  std::vector<double> rs, phis;
  for (double r = 0.0; r <= 4.0 + 0.5 * h; r += h) {
    rs.push_back(r);
    phis.push_back(euler2_h1(r));
  }
  const auto tab = ModelManifold::tabulated(2, rs, phis);
  for (double r : linear_grid(0.1, 3.9, 16)) {
    CHECK(tab.warp(r) == doctest::Approx(ref.warp(r)).epsilon(1e-9));
    CHECK(tab.warp_deriv(r) == doctest::Approx(ref.warp_deriv(r)).epsilon(1e-8));
    // second derivative tolerance: h^2 truncation plus eps/h^2 rounding
    CHECK(std::abs(tab.warp_second(r) - ref.warp_second(r)) <
          1e-4 * h * h + 100.0 * 2.2e-16 / (h * h));
  }
  // tabulated-warp margins inherit the stencil noise, not solver accuracy
  CHECK(ricci_decay_check(tab, p, 3.9, 128).radial_margin > -1e-7);
}

TEST_CASE("warp table constructors enforce the origin conditions") {
  std::vector<double> rs, good, bad;
  for (int i = 0; i <= 100; ++i) {
    rs.push_back(0.01 * i);
    good.push_back(0.01 * i);
    bad.push_back(0.01 * i + 0.5);
  }
  CHECK_NOTHROW(ModelManifold::tabulated(2, rs, good));
  CHECK_THROWS_AS(ModelManifold::tabulated(2, rs, bad), std::invalid_argument);
  CHECK_THROWS_AS(ModelManifold::euclidean(1), std::invalid_argument);
}
