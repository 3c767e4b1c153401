// Acceptance suite: one criterion per section, one PASS/FAIL line each.
//
// Usage: acceptance [cli-binary] [config-file]
// The last two arguments default to paths that work from the build tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "geodecay/abp.hpp"
#include "geodecay/common.hpp"
#include "geodecay/comparison.hpp"
#include "geodecay/inequalities.hpp"
#include "geodecay/model_manifold.hpp"
#include "geodecay/ode.hpp"
#include "geodecay/profiles.hpp"
#include "geodecay/scenario.hpp"

using namespace geodecay;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

double computed_value(const VerificationReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.computed)
    if (k == key) return v;
  return std::nan("");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Flat equality anchors: isoperimetric and constant-f Sobolev margins
//    vanish on Euclidean balls, within 1e-9, in under a second.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const auto zero = make_profile(ProfileKind::zero, {});
  double worst = 0.0;
  bool ok = true;
  for (int n : {2, 3}) {
    const auto m = ModelManifold::euclidean(n);
    for (double r : {0.5, 1.0, 2.0}) {
      const auto iso = isoperimetric_check(m, zero, r);
      const auto sob = sobolev_check_domain(m, zero, r, RadialTestFunction::constant(1.0));
      ok = ok && iso.status == ReportStatus::PASS && sob.status == ReportStatus::PASS;
      worst = std::max(worst, std::abs(computed_value(iso, "margin")));
      worst = std::max(worst, std::abs(computed_value(sob, "margin")));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && worst <= 1e-9 && secs < 1.0;
  report(1, ok, "flat equality anchors (worst |margin| = " + fmt(worst) + ", " +
                    fmt(secs) + " s)");
}

// ---------------------------------------------------------------------------
// 2. Closed-form ODE anchors: h1(1) = 7/6 for the euler profile, growth
//    exponent 2 within 1e-3 at horizon 1e4, golden ratio within 1% for the
//    rational profile.
void criterion_2() {
  const auto euler = make_profile(ProfileKind::euler, {2.0});
  const auto h1 = solve_h1(euler, 1.0, 1e-12);
  const double h1_err = std::abs(h1.value(1.0) - 7.0 / 6.0);
  bool ok = h1_err <= 1e-8;

  const auto ge = check_growth_exponent(euler, 1e4);
  ok = ok && ge.pass && std::abs(ge.worst_slack) <= 1e-3;

  const auto rat = make_profile(ProfileKind::rational, {1.0});
  const auto gr = check_growth_exponent(rat, 1e4);
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  ok = ok && gr.pass && std::abs(gr.worst_slack) <= 0.01 * golden;

  report(2, ok, "closed-form ODE anchors (|h1(1)-7/6| = " + fmt(h1_err) +
                    ", exponent gaps " + fmt(std::abs(ge.worst_slack)) + ", " +
                    fmt(std::abs(gr.worst_slack)) + ")");
}

// ---------------------------------------------------------------------------
// 3. Lemma suite: 20 seeded random profiles, five checks each, slack above
//    -1e-8, total under 60 s.
void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  LemmaSuiteOptions opt;
  opt.seed = 42;
  opt.profile_count = 20;
  const auto entries = run_lemma_suite(opt);
  int failed = 0;
  double worst = 1e300;        // over the fixed-tolerance checks
  double worst_asym = 1e300;   // growth exponent, 1% relative at the horizon
  for (const auto& e : entries) {
    for (const auto& c : e.checks) {
      if (!c.pass) ++failed;
      if (c.lemma_id == LemmaId::growth_exponent) {
        worst_asym = std::min(worst_asym, c.worst_slack);
      } else {
        worst = std::min(worst, c.worst_slack);
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = failed == 0 && worst >= -1e-8 && secs < 60.0;
  report(3, ok, "lemma suite, 20 seeded profiles x 5 checks (" + std::to_string(failed) +
                    " failures, min slack " + fmt(worst) + ", asymptotic " + fmt(worst_asym) +
                    ", " + fmt(secs) + " s)");
}

// ---------------------------------------------------------------------------
// 4. Bishop-Gromov: five (manifold, profile) pairs; ratio nonincreasing
//    within 1e-10 per step, theta <= 1 + 1e-10; matched warps give theta = 1
//    within 1e-9.
void criterion_4() {
  const auto zero = make_profile(ProfileKind::zero, {});
  const auto euler = make_profile(ProfileKind::euler, {2.0});
  const auto rat1 = make_profile(ProfileKind::rational, {1.0});
  const auto rat05 = make_profile(ProfileKind::rational, {0.5});
  const auto pw = make_profile(ProfileKind::piecewise_min, {0.3});

  struct Pair {
    ModelManifold m;
    CurvatureProfile p;
    bool matched;
  };
  const std::vector<Pair> pairs = {
      {ModelManifold::euclidean(2), zero, true},
      {ModelManifold::euclidean(2), euler, false},
      {ModelManifold::comparison(2, rat1, 1000.0), rat1, true},
      {ModelManifold::comparison(2, rat05, 1000.0), rat1, false},
      {ModelManifold::comparison(3, pw, 1000.0), pw, true},
  };

  bool ok = true;
  double worst_mono = 0.0, worst_matched = 0.0;
  for (const auto& pr : pairs) {
    ok = ok && ricci_decay_check(pr.m, pr.p, 1000.0).passed();
    const auto bg = bishop_gromov_ratio(pr.m, pr.p, geometric_grid(0.1, 1000.0, 160));
    worst_mono = std::max(worst_mono, bg.avr.monotone_violation);
    ok = ok && bg.avr.monotone_violation <= 1e-10 && bg.avr.theta <= 1.0 + 1e-10;
    if (pr.matched) {
      worst_matched = std::max(worst_matched, std::abs(bg.avr.theta - 1.0));
      ok = ok && std::abs(bg.avr.theta - 1.0) <= 1e-9;
    }
  }
  report(4, ok, "bishop-gromov monotonicity over 5 pairs (max step increase " +
                    fmt(worst_mono) + ", matched |theta-1| = " + fmt(worst_matched) + ")");
}

// ---------------------------------------------------------------------------
// 5. Domain Sobolev sweep: 3 curved models x 5 radii x 3 test functions,
//    margins above -1e-8 * scale(LHS).
void criterion_5() {
  const auto euler = make_profile(ProfileKind::euler, {2.0});
  const auto rat1 = make_profile(ProfileKind::rational, {1.0});
  const auto pw = make_profile(ProfileKind::piecewise_min, {0.3});

  struct Model {
    ModelManifold m;
    CurvatureProfile p;
  };
  const std::vector<Model> models = {
      {ModelManifold::comparison(2, euler, 1100.0), euler},
      {ModelManifold::comparison(2, rat1, 1100.0), rat1},
      {ModelManifold::comparison(3, pw, 1100.0), pw},
  };
  const std::vector<RadialTestFunction> fs = {
      RadialTestFunction::constant(1.0),
      RadialTestFunction::affine(2.0, 0.5),
      RadialTestFunction::bump(1.5, 2.0),
  };

  bool ok = true;
  double worst_rel = 1e300;
  int count = 0;
  for (const auto& md : models) {
    for (double r : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      for (const auto& f : fs) {
        const auto rep = sobolev_check_domain(md.m, md.p, r, f);
        const double margin = computed_value(rep, "margin");
        const double lhs = computed_value(rep, "lhs");
        worst_rel = std::min(worst_rel, margin / std::max(1.0, lhs));
        ok = ok && rep.status == ReportStatus::PASS &&
             margin >= -1e-8 * std::max(1.0, std::abs(lhs));
        ++count;
      }
    }
  }
  report(5, ok, "domain sobolev sweep, " + std::to_string(count) +
                    " cases (min margin/LHS = " + fmt(worst_rel) + ")");
}

// ---------------------------------------------------------------------------
// 6. Flat submanifold checks for (n, p) in {(2,2), (2,3), (3,2)}, plus the
//    b1 -> 0 constant anchor 2 sqrt(pi).
void criterion_6() {
  bool ok = true;
  for (auto [n, p] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const auto disk =
        submanifold_check_flat({SubmanifoldSpec::Kind::flat_disk, n, p}, 1.0);
    const auto sphere =
        submanifold_check_flat({SubmanifoldSpec::Kind::round_sphere, n, p}, 1.0);
    ok = ok && disk.status == ReportStatus::PASS && sphere.status == ReportStatus::PASS;
  }
  InequalityParams q;
  q.n = 2;
  q.p = 2;
  q.theta = 1.0;
  q.B = 0.0;
  q.b1 = 0.0;
  q.r0 = 1.0;
  const double limit = sobolev_constant_submanifold(q);
  q.b1 = 1e-13;
  const double tiny = sobolev_constant_submanifold(q);
  const double anchor_err = std::abs(limit - 2.0 * std::sqrt(M_PI));
  ok = ok && anchor_err <= 1e-9 && std::abs(tiny - limit) <= 1e-9;
  report(6, ok, "flat submanifold checks and the 2 sqrt(pi) anchor (|err| = " +
                    fmt(anchor_err) + ")");
}

// ---------------------------------------------------------------------------
// 7. ABP pipeline: Euclidean closed forms within 1e-8; a curved model passes
//    hessian/covering/jacobian with nonnegative slack; the mass chain holds
//    within 1e-6 relative.
void criterion_7() {
  bool ok = true;
  std::string note;
  {
    const auto m = ModelManifold::euclidean(2);
    const auto zero = make_profile(ProfileKind::zero, {});
    const auto sol = solve_neumann_radial(m, zero, 1.0, RadialTestFunction::constant(1.0));
    double worst_u = 0.0;
    for (double r : linear_grid(0.0, 1.0, 41))
      worst_u = std::max(worst_u, std::abs(sol.u(r) - 0.5 * r * r));
    ok = ok && worst_u <= 1e-8;

    const auto ts = transport_radial(sol, 10.0);
    double worst_det = 0.0;
    for (std::size_t i = 0; i < ts.s.size(); ++i)
      if (ts.contact[i]) worst_det = std::max(worst_det, std::abs(ts.jacobian[i] - 121.0));
    ok = ok && worst_det <= 1e-8 * 121.0;
    ok = ok && covering_check(ts, 1.0, 10.0, linear_grid(1.01, 8.99, 257)).empty();

    const auto jac = jacobian_bound_check(ts, zero, sol);
    const double scale = std::max(1.0, jac.bound_mass);
    ok = ok && std::abs(jac.annulus_volume - 80.0 * M_PI) <= 1e-8 * 80.0 * M_PI;
    ok = ok && jac.annulus_volume <= jac.transport_mass + 1e-6 * scale;
    ok = ok && jac.transport_mass <= jac.bound_mass + 1e-6 * scale;
    note = "flat |u - r^2/2| = " + fmt(worst_u) + ", |det - 121| = " + fmt(worst_det);
  }
  {
    const auto p = make_profile(ProfileKind::rational, {0.5});
    const auto m = ModelManifold::comparison(2, p, 12.0);
    const auto sol = solve_neumann_radial(m, p, 1.0, RadialTestFunction::constant(1.0));
    ok = ok && hessian_bound_check(sol).worst_slack >= -1e-8;
    const auto ts = transport_radial(sol, 10.0);
    ok = ok && covering_check(ts, 1.0, 10.0, linear_grid(1.01, 8.99, 257)).empty();
    const auto jac = jacobian_bound_check(ts, p, sol);
    const double scale = std::max(1.0, jac.bound_mass);
    ok = ok && jac.worst_slack >= -1e-8;
    ok = ok && jac.annulus_volume <= jac.transport_mass + 1e-6 * scale;
    ok = ok && jac.transport_mass <= jac.bound_mass + 1e-6 * scale;
    note += ", curved min slack " + fmt(jac.worst_slack);
  }
  report(7, ok, "abp pipeline (" + note + ")");
}

// ---------------------------------------------------------------------------
// 8. CLI: the shipped config runs to exit 0 and emits schema-valid json that
//    is byte-identical across runs under the fixed seed.
void criterion_8(const std::string& cli, const std::string& config) {
  auto run_once = [&](const std::string& out_dir) -> int {
    const std::string cmd =
        cli + " run --config " + config + " --out " + out_dir + " --format json > /dev/null";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  const int rc1 = run_once("/tmp/geodecay-accept-1");
  const int rc2 = run_once("/tmp/geodecay-accept-2");
  const std::string a = slurp("/tmp/geodecay-accept-1/reports.json");
  const std::string b = slurp("/tmp/geodecay-accept-2/reports.json");

  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  std::size_t scenario_count = 0;
  try {
    const auto parsed = nlohmann::json::parse(a);
    ok = ok && parsed.is_array() && !parsed.empty();
    for (const auto& rep : parsed) {
      for (const char* key : {"scenario_id", "status", "inputs", "computed", "tolerances"})
        ok = ok && rep.contains(key);
      ok = ok && rep["status"] == "PASS";
    }
    scenario_count = parsed.size();
  } catch (const std::exception&) {
    ok = false;
  }
  report(8, ok, "CLI run of the shipped config (" + std::to_string(scenario_count) +
                    " scenarios, byte-identical reruns)");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "./build/tools/geodecay";
  const std::string config = argc > 2 ? argv[2] : "configs/full.config";

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8(cli, config);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
