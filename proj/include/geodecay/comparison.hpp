#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geodecay/model_manifold.hpp"
#include "geodecay/ode.hpp"
#include "geodecay/profiles.hpp"

namespace geodecay {

enum class LemmaId {
  shifted_bound,
  growth_exponent,
  shift_ratio,
  psi_ratio,
  h2h1_limit,
  det_bound
};

const char* to_string(LemmaId id);

struct LemmaCheckResult {
  LemmaId lemma_id;
  double worst_slack;  // min over the evaluation grid of RHS - LHS
  double location;     // t (or r) where the worst slack occurred
  bool pass;           // worst_slack >= -tolerance
  double tolerance;
  std::string note;    // stabilization / conjugate-point diagnostics

  static LemmaCheckResult make(LemmaId id, double slack, double location, double tolerance,
                               std::string note = {});
};

// f'' = lambda(|t-r|) f stays below ((e^{r0 b1}-1)/b1) h2 + e^{r0 b1} h1 on
// [0, T]. Requires 0 <= r <= r0. The degenerate coefficient is evaluated by
// series once b1 < 1e-12.
LemmaCheckResult check_shifted_bound(const CurvatureProfile& p, double r, double r0, double T,
                                     double tol = 1e-8, double ode_tol = 1e-10);

// sup over [T/2, T] of t h1'/h1 against (1 + sqrt(1+4B))/2, within rel_tol
// relative. Requires T >= 1e3; notes when the ratio has not stabilized.
LemmaCheckResult check_growth_exponent(const CurvatureProfile& p, double T, double rel_tol = 0.01,
                                       double ode_tol = 1e-10);

// |1 - h(T-c)/h(T)| <= safety * |c| C1 / T with C1 = sup t h'/h over [T/2, T].
LemmaCheckResult check_shift_ratio(const CurvatureProfile& p, double c, double T,
                                   double safety = 2.0, double ode_tol = 1e-10);

// psi2/psi1(r) <= 2 b1 speed + 1/r for psi solved against
// ScaledProfile(speed, center).
LemmaCheckResult check_psi_ratio(const CurvatureProfile& p, double speed, double center, double r,
                                 double tol = 1e-8, double ode_tol = 1e-10);

// h2(r)/h1(r) <= b1 + 1/r.
LemmaCheckResult check_h2h1_limit(const CurvatureProfile& p, double r, double tol = 1e-8,
                                  double ode_tol = 1e-10);

// det P(t) <= (1 + t q_radial) psi^{n-1}(t) along the unit-speed-scaled
// radial geodesic of m starting at start_radius, where P solves the matrix
// Jacobi system with Q(0) = diag(q_radial, q_transverse, ...) and
// psi = psi2 + q_transverse psi1 against ScaledProfile(speed, start_radius).
// Slack is normalized by max(1, |RHS|); a conjugate point before r fails the
// check with a note.
LemmaCheckResult check_det_bound(const ModelManifold& m, const CurvatureProfile& p,
                                 double start_radius, double speed, double q_radial,
                                 double q_transverse, double r, double tol = 1e-8,
                                 double ode_tol = 1e-10);

struct LemmaSuiteOptions {
  std::uint64_t seed = 0;
  int profile_count = 20;
  double growth_horizon = 1e4;
  double check_horizon = 20.0;
  double slack_tol = 1e-8;
  double asymptotic_rel = 0.01;
  double ode_tol = 1e-10;
};

struct LemmaSuiteEntry {
  std::string profile;
  std::array<LemmaCheckResult, 5> checks;  // shifted, growth, shift, psi, det
  bool all_pass = false;
};

// Seeded random profiles (mixture of the built-in kinds) run through the
// five lemma checks. Identical seeds reproduce identical batches.
std::vector<LemmaSuiteEntry> run_lemma_suite(const LemmaSuiteOptions& opt);

}  // namespace geodecay
