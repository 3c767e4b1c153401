#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodecay/inequalities.hpp"
#include "geodecay/model_manifold.hpp"
#include "geodecay/profiles.hpp"
#include "geodecay/report.hpp"

namespace geodecay {

// Malformed configuration (schema violation, duplicate ids, unknown keys).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { constants, lemmas, isoperimetric, sobolev, submanifold, abp };

const char* to_string(Command c);

struct Tolerances {
  double equality = 1e-8;       // absolute, equality-case anchors
  double slack = 1e-8;          // inequality slack allowance
  double asymptotic_rel = 0.01; // relative, limsup-type checks at the horizon
  double ode = 1e-10;           // ODE solver local tolerance
  double quadrature = 1e-11;    // relative quadrature tolerance
  double monotone = 1e-10;      // Bishop-Gromov per-step monotonicity
};

struct ProfileSpec {
  std::string kind = "zero";
  std::vector<double> params;
  std::string path;  // tabulated profiles only

  CurvatureProfile build() const;
  std::string describe() const;
};

struct ManifoldSpec {
  int dimension = 2;
  std::string warp = "euclidean";  // euclidean | comparison | tabulated
  std::optional<ProfileSpec> warp_profile;  // defaults to the scenario profile
  std::string path;                         // tabulated warps only

  ModelManifold build(const ProfileSpec& scenario_profile, double radial_extent,
                      double ode_tol) const;
};

struct ScenarioConfig {
  std::string id;
  Command command = Command::constants;
  Tolerances tol;

  ProfileSpec profile;
  ManifoldSpec manifold;

  // constants
  std::string constant_case = "domain";  // domain | submanifold
  int n = 2, p = 2;
  double theta = 1.0, B = 0.0, b1 = 0.0, r0 = 0.0;

  // lemmas
  int count = 20;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double growth_horizon = 1e4;
  double check_horizon = 20.0;

  // isoperimetric / sobolev
  std::vector<double> radii;
  std::vector<RadialTestFunction> test_functions;
  double bg_horizon = 1000.0;

  // submanifold
  std::string shape = "flat_disk";
  double f_const = 1.0;

  // abp
  double ball_radius = 1.0;
  double transport_r = 10.0;
  int source_samples = 1024;
  double epsilon_fraction = 1e-3;
};

struct RunConfig {
  std::uint64_t seed = 0;
  int workers = 1;
  Tolerances tol;
  std::vector<ScenarioConfig> scenarios;
};

// Strict JSON parse: unknown keys, duplicate scenario ids, or unresolvable
// specs raise ConfigError and nothing runs.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");

// Runs every scenario (worker threads pull scenarios; report order follows
// the config). Per-scenario numerical failures are recorded, not thrown.
std::vector<VerificationReport> run_scenarios(const RunConfig& cfg, int workers_override = 0,
                                              std::optional<std::uint64_t> seed_override = {});

VerificationReport run_scenario(const ScenarioConfig& sc, std::uint64_t global_seed);

// 0 all PASS; 2 any FAIL; 3 any NUMERICAL_FAILURE and no FAIL.
int exit_code_for(const std::vector<VerificationReport>& reports);

}  // namespace geodecay
