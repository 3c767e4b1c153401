// Scenario-driven verification front end.
//
// Subcommands:
//   run       --config <path> --out <dir> --format json|csv [--workers N] [--seed S]
//   constant  --case domain|submanifold --n N [--p P] --theta T --B B --b1 B1 --r0 R0
//   validate  --config <path>
//
// Exit codes: 0 all PASS, 1 usage error, 2 any FAIL, 3 any NUMERICAL_FAILURE
// (and no FAIL).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geodecay/inequalities.hpp"
#include "geodecay/report.hpp"
#include "geodecay/scenario.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, const std::string& format,
            int workers, std::optional<std::uint64_t> seed) {
  geodecay::RunConfig cfg;
  try {
    cfg = geodecay::parse_config_file(config_path);
  } catch (const geodecay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  const auto reports = geodecay::run_scenarios(cfg, workers, seed);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << out_dir << ": " << ec.message() << "\n";
    return 1;
  }
  const std::string path =
      (std::filesystem::path(out_dir) / ("reports." + format)).string();
  try {
    if (format == "json") {
      geodecay::write_text_file(path, geodecay::reports_to_json(reports));
    } else {
      geodecay::write_text_file(path, geodecay::reports_to_csv(reports));
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& r : reports) {
    std::printf("%-28s %-18s %7.0f ms%s%s\n", r.scenario_id.c_str(),
                geodecay::to_string(r.status), r.wall_time_s * 1e3,
                r.detail.empty() ? "" : "  ", r.detail.c_str());
  }
  std::printf("wrote %s\n", path.c_str());
  return geodecay::exit_code_for(reports);
}

int cmd_constant(const std::string& case_name, int n, int p, double theta, double B, double b1,
                 double r0) {
  geodecay::InequalityParams q;
  q.n = n;
  q.p = p;
  q.theta = theta;
  q.B = B;
  q.b1 = b1;
  q.r0 = r0;
  try {
    const double c = case_name == "domain" ? geodecay::sobolev_constant_domain(q)
                                           : geodecay::sobolev_constant_submanifold(q);
    std::printf("%s\n", geodecay::format_double(c).c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_validate(const std::string& config_path) {
  try {
    const auto cfg = geodecay::parse_config_file(config_path);
    std::printf("ok: %zu scenario(s)\n", cfg.scenarios.size());
    return 0;
  } catch (const geodecay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sobolev/isoperimetric constants and comparison-lemma verification on model "
               "manifolds with quadratic curvature decay"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the scenarios of a config file");
  std::string config_path, out_dir = ".", format = "json";
  int workers = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_value = 0;
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--workers", workers, "worker threads");
  auto* seed_opt = run->add_option("--seed", seed_value, "override the config seed");

  auto* constant = app.add_subcommand("constant", "print a Sobolev constant");
  std::string case_name = "domain";
  int n = 2, p = 2;
  double theta = 1.0, B = 0.0, b1 = 0.0, r0 = 0.0;
  constant->add_option("--case", case_name, "domain or submanifold")
      ->check(CLI::IsMember({"domain", "submanifold"}));
  constant->add_option("--n", n, "intrinsic dimension")->required();
  constant->add_option("--p", p, "codimension (submanifold)");
  constant->add_option("--theta", theta, "asymptotic volume ratio");
  constant->add_option("--B", B, "quadratic-decay limsup");
  constant->add_option("--b1", b1, "integral of the decay profile");
  constant->add_option("--r0", r0, "max distance from the base point");

  auto* validate = app.add_subcommand("validate", "check a config file against the schema");
  std::string validate_path;
  validate->add_option("--config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (seed_opt->count() > 0) seed = seed_value;

  if (run->parsed()) return cmd_run(config_path, out_dir, format, workers, seed);
  if (constant->parsed()) return cmd_constant(case_name, n, p, theta, B, b1, r0);
  if (validate->parsed()) return cmd_validate(validate_path);
  return 1;
}
