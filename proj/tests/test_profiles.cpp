#include <doctest.h>

#include <cmath>
#include <sstream>

#include "geodecay/common.hpp"
#include "geodecay/profiles.hpp"
#include "geodecay/quadrature.hpp"

using namespace geodecay;

TEST_CASE("built-in profiles evaluate pointwise") {
  const auto zero = make_profile(ProfileKind::zero, {});
  CHECK(zero(5.0) == 0.0);

  const auto rat = make_profile(ProfileKind::rational, {1.0});
  CHECK(rat(1.0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto eul = make_profile(ProfileKind::euler, {2.0});
  CHECK(eul(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eul(1.0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto bump = make_profile(ProfileKind::linear_bump, {1.0, 0.5});
  CHECK(bump(0.0) == doctest::Approx(1.0));
  CHECK(bump(2.0) == doctest::Approx(0.0));
  CHECK(bump(5.0) == 0.0);

  const auto pw = make_profile(ProfileKind::piecewise_min, {0.7});
  CHECK(pw(0.5) == doctest::Approx(0.7));
  CHECK(pw(2.0) == doctest::Approx(0.7 / 4.0));
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(make_profile(ProfileKind::rational, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_profile(ProfileKind::euler, {}), std::invalid_argument);
  // A flat positive bump never decays, so b1 would be infinite.
  CHECK_THROWS_AS(make_profile(ProfileKind::linear_bump, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_tabulated({0.5, 1.0}, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("validate_profile diagnoses without throwing") {
  CHECK(validate_profile(make_profile(ProfileKind::zero, {}), 0.1, 10.0).empty());
  CHECK(validate_profile(make_profile(ProfileKind::rational, {1.0}), 0.01, 20.0).empty());

  const auto bad = CurvatureProfile::tabulated_raw({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  const auto viols = validate_profile(bad, 0.0, 0.0);
  REQUIRE(viols.size() == 1);
  CHECK(viols[0].type == ProfileViolation::Type::increasing);
  CHECK(viols[0].index == 1);
}

TEST_CASE("profile invariants: closed forms vs quadrature oracle") {
  const auto inv_zero = profile_invariants(make_profile(ProfileKind::zero, {}));
  CHECK(inv_zero.B == 0.0);
  CHECK(inv_zero.b1 == 0.0);

  const auto rat = make_profile(ProfileKind::rational, {1.0});
  const auto inv_rat = profile_invariants(rat);
  CHECK(inv_rat.B == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(inv_rat.b1 == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  // oracle: adaptive quadrature to a large horizon plus the arctan tail
  const double H = 1e6;
  const double oracle = integrate([&](double t) { return rat(t); }, 0.0, H, 1e-12) +
                        (M_PI / 2.0 - std::atan(H));
  CHECK(inv_rat.b1 == doctest::Approx(oracle).epsilon(1e-9));

  const auto inv_eul = profile_invariants(make_profile(ProfileKind::euler, {2.0}));
  CHECK(inv_eul.B == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(inv_eul.b1 == doctest::Approx(2.0).epsilon(1e-15));

  const auto inv_bump = profile_invariants(make_profile(ProfileKind::linear_bump, {1.0, 0.5}));
  CHECK(inv_bump.B == 0.0);
  CHECK(inv_bump.b1 == doctest::Approx(1.0).epsilon(1e-15));  // a^2/(2b)

  const auto inv_pw = profile_invariants(make_profile(ProfileKind::piecewise_min, {0.7}));
  CHECK(inv_pw.B == doctest::Approx(0.7));
  CHECK(inv_pw.b1 == doctest::Approx(1.4));
}

TEST_CASE("fitted-tail path agrees with the analytic path") {
  const auto rat = make_profile(ProfileKind::rational, {1.5});
  const auto fit = profile_invariants(rat, 1e4, TailModel::power_law_fit);
  CHECK(fit.B == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(fit.b1 == doctest::Approx(1.5 * M_PI / 2.0).epsilon(1e-6));
  CHECK(fit.tail_estimate_error > 0.0);
  CHECK(fit.tail_drift < 0.05);
}

TEST_CASE("tabulated profiles load, evaluate, and report invariants") {
  std::istringstream in("# t lambda\n0 1.0\n1 0.5\n2 0.2\n4 0.05\n");
  const auto p = load_tabulated(in);
  CHECK(p(0.0) == doctest::Approx(1.0));
  CHECK(p(0.5) == doctest::Approx(0.75));
  CHECK(p(3.0) == doctest::Approx(0.125));
  // beyond the table: C/t^2 with C matched at the last row
  CHECK(p(8.0) == doctest::Approx(0.05 * 16.0 / 64.0));

  const auto inv = profile_invariants(p, 1e3);
  CHECK(inv.b1 > 0.0);
  CHECK(std::isfinite(inv.B));
  CHECK(inv.tail_estimate_error > 0.0);
}

TEST_CASE("profiles stay continuous under grid refinement") {
  for (const auto& p : {make_profile(ProfileKind::rational, {1.0}),
                        make_profile(ProfileKind::linear_bump, {1.0, 1.0}),
                        make_profile(ProfileKind::piecewise_min, {0.8})}) {
    double prev_max_jump = 0.0;
    for (int level = 0; level < 3; ++level) {
      const double step = 0.1 / std::pow(4.0, level);
      double max_jump = 0.0;
      for (double t = 0.0; t < 3.0; t += step)
        max_jump = std::max(max_jump, std::abs(p(t + step) - p(t)));
      if (level > 0) CHECK(max_jump < 0.5 * prev_max_jump);
      prev_max_jump = max_jump;
    }
  }
}

TEST_CASE("scaled profiles evaluate and integrate below twice b1") {
  const auto zero = make_profile(ProfileKind::zero, {});
  const auto sz = scale_profile(zero, 0.5, 3.0);
  CHECK(sz(0.0) == 0.0);
  CHECK(sz(17.3) == 0.0);

  const auto rat = make_profile(ProfileKind::rational, {1.0});
  const auto id = scale_profile(rat, 1.0, 0.0);
  for (double t : linear_grid(0.0, 10.0, 21)) CHECK(id(t) == doctest::Approx(rat(t)));

  const auto eul = make_profile(ProfileKind::euler, {2.0});
  CHECK(scale_profile(eul, 0.5, 1.0)(2.0) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(scale_profile(rat, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_profile(rat, 0.5, -1.0), std::invalid_argument);

  // integral bound: int_0^H scaled <= 2 b1, matching the transport estimate
  DeterministicRng rng(7);
  for (const auto& p : {rat, eul, make_profile(ProfileKind::piecewise_min, {0.9})}) {
    const double b1 = profile_invariants(p).b1;
    for (int i = 0; i < 5; ++i) {
      const auto sp = scale_profile(p, rng.uniform(0.05, 1.0), rng.uniform(0.0, 4.0));
      const double got =
          integrate_with_kinks([&](double t) { return sp(t); }, 0.0, 2e3, sp.kinks(), 1e-10);
      CHECK(got <= 2.0 * b1 + 1e-8);
    }
  }
}

TEST_CASE("b1 is monotone in the profile") {
  const auto lo = make_profile(ProfileKind::rational, {0.5});
  const auto hi = make_profile(ProfileKind::rational, {1.5});
  CHECK(profile_invariants(lo).b1 <= profile_invariants(hi).b1 + 1e-12);

  const auto eul_lo = make_profile(ProfileKind::euler, {0.7});
  const auto eul_hi = make_profile(ProfileKind::euler, {1.4});
  CHECK(profile_invariants(eul_lo).b1 <= profile_invariants(eul_hi).b1 + 1e-12);
}
