#include "geodecay/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "geodecay/abp.hpp"
#include "geodecay/common.hpp"
#include "geodecay/comparison.hpp"

namespace geodecay {

using nlohmann::json;

const char* to_string(Command c) {
  switch (c) {
    case Command::constants: return "constants";
    case Command::lemmas: return "lemmas";
    case Command::isoperimetric: return "isoperimetric";
    case Command::sobolev: return "sobolev";
    case Command::submanifold: return "submanifold";
    case Command::abp: return "abp";
  }
  return "?";
}

CurvatureProfile ProfileSpec::build() const {
  if (kind == "tabulated") {
    if (path.empty()) throw ConfigError("tabulated profile needs a path");
    return load_tabulated_file(path);
  }
  ProfileKind k;
  if (kind == "zero") k = ProfileKind::zero;
  else if (kind == "rational") k = ProfileKind::rational;
  else if (kind == "euler") k = ProfileKind::euler;
  else if (kind == "linear_bump") k = ProfileKind::linear_bump;
  else if (kind == "piecewise_min") k = ProfileKind::piecewise_min;
  else throw ConfigError("unknown profile kind: " + kind);
  try {
    return make_profile(k, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad profile parameters: ") + e.what());
  }
}

std::string ProfileSpec::describe() const {
  std::ostringstream os;
  os << kind;
  for (double p : params) os << " " << p;
  if (!path.empty()) os << " " << path;
  return os.str();
}

ModelManifold ManifoldSpec::build(const ProfileSpec& scenario_profile, double radial_extent,
                                  double ode_tol) const {
  if (warp == "euclidean") return ModelManifold::euclidean(dimension);
  if (warp == "comparison") {
    const ProfileSpec& ps = warp_profile ? *warp_profile : scenario_profile;
    return ModelManifold::comparison(dimension, ps.build(), radial_extent, ode_tol);
  }
  if (warp == "tabulated") {
    if (path.empty()) throw ConfigError("tabulated warp needs a path");
    return ModelManifold::load_warp(dimension, path);
  }
  throw ConfigError("unknown warp kind: " + warp);
}

namespace {

void expect_keys(const json& obj, const std::set<std::string>& allowed,
                 const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

double get_num(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("key \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

std::string get_str(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw ConfigError("key \"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

Tolerances parse_tolerances(const json& obj, Tolerances base, const std::string& where) {
  expect_keys(obj, {"equality", "slack", "asymptotic_rel", "ode", "quadrature", "monotone"},
              where);
  base.equality = get_num(obj, "equality", base.equality);
  base.slack = get_num(obj, "slack", base.slack);
  base.asymptotic_rel = get_num(obj, "asymptotic_rel", base.asymptotic_rel);
  base.ode = get_num(obj, "ode", base.ode);
  base.quadrature = get_num(obj, "quadrature", base.quadrature);
  base.monotone = get_num(obj, "monotone", base.monotone);
  return base;
}

ProfileSpec parse_profile(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": profile must be an object");
  expect_keys(obj, {"kind", "params", "path"}, where + ".profile");
  ProfileSpec ps;
  ps.kind = get_str(obj, "kind", "zero");
  if (obj.contains("params")) {
    if (!obj["params"].is_array()) throw ConfigError(where + ": profile params must be an array");
    for (const auto& v : obj["params"]) {
      if (!v.is_number()) throw ConfigError(where + ": profile params must be numbers");
      ps.params.push_back(v.get<double>());
    }
  }
  ps.path = get_str(obj, "path", "");
  ps.build();  // validates eagerly so malformed configs fail before any run
  return ps;
}

RadialTestFunction parse_test_function(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": test function must be an object");
  expect_keys(obj, {"kind", "params"}, where + ".test_function");
  const std::string kind = get_str(obj, "kind", "constant");
  std::vector<double> params;
  if (obj.contains("params")) {
    for (const auto& v : obj["params"]) {
      if (!v.is_number()) throw ConfigError(where + ": test function params must be numbers");
      params.push_back(v.get<double>());
    }
  }
  try {
    if (kind == "constant") {
      if (params.size() != 1) throw ConfigError(where + ": constant takes 1 parameter");
      return RadialTestFunction::constant(params[0]);
    }
    if (kind == "affine") {
      if (params.size() != 2) throw ConfigError(where + ": affine takes 2 parameters");
      return RadialTestFunction::affine(params[0], params[1]);
    }
    if (kind == "bump") {
      if (params.size() != 2) throw ConfigError(where + ": bump takes 2 parameters");
      return RadialTestFunction::bump(params[0], params[1]);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown test function kind: " + kind);
}

ScenarioConfig parse_scenario(const json& obj, const Tolerances& base_tol) {
  if (!obj.is_object()) throw ConfigError("scenario entries must be objects");
  ScenarioConfig sc;
  sc.tol = base_tol;
  if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty())
    throw ConfigError("every scenario needs a nonempty string id");
  sc.id = obj["id"].get<std::string>();
  const std::string where = "scenario \"" + sc.id + "\"";

  const std::string cmd = get_str(obj, "command", "");
  if (cmd == "constants") sc.command = Command::constants;
  else if (cmd == "lemmas") sc.command = Command::lemmas;
  else if (cmd == "isoperimetric") sc.command = Command::isoperimetric;
  else if (cmd == "sobolev") sc.command = Command::sobolev;
  else if (cmd == "submanifold") sc.command = Command::submanifold;
  else if (cmd == "abp") sc.command = Command::abp;
  else throw ConfigError(where + ": unknown command \"" + cmd + "\"");

  std::set<std::string> allowed{"id", "command", "tolerances"};
  switch (sc.command) {
    case Command::constants:
      allowed.insert({"case", "n", "p", "theta", "B", "b1", "r0"});
      break;
    case Command::lemmas:
      allowed.insert({"count", "seed", "growth_horizon", "check_horizon"});
      break;
    case Command::isoperimetric:
      allowed.insert({"profile", "manifold", "radius", "radii", "horizon"});
      break;
    case Command::sobolev:
      allowed.insert(
          {"profile", "manifold", "radius", "radii", "horizon", "test_function",
           "test_functions"});
      break;
    case Command::submanifold:
      allowed.insert({"shape", "n", "p", "f"});
      break;
    case Command::abp:
      allowed.insert({"profile", "manifold", "radius", "transport_r", "source_samples",
                      "epsilon_fraction", "test_function"});
      break;
  }
  expect_keys(obj, allowed, where);
  if (obj.contains("tolerances"))
    sc.tol = parse_tolerances(obj["tolerances"], base_tol, where + ".tolerances");

  auto parse_radii = [&]() {
    if (obj.contains("radius")) sc.radii.push_back(get_num(obj, "radius", 1.0));
    if (obj.contains("radii")) {
      for (const auto& v : obj["radii"]) {
        if (!v.is_number()) throw ConfigError(where + ": radii must be numbers");
        sc.radii.push_back(v.get<double>());
      }
    }
    if (sc.radii.empty()) throw ConfigError(where + ": needs radius or radii");
    for (double r : sc.radii)
      if (!(r > 0.0)) throw ConfigError(where + ": radii must be positive");
  };

  switch (sc.command) {
    case Command::constants: {
      sc.constant_case = get_str(obj, "case", "domain");
      if (sc.constant_case != "domain" && sc.constant_case != "submanifold")
        throw ConfigError(where + ": case must be domain or submanifold");
      sc.n = static_cast<int>(get_num(obj, "n", 2));
      sc.p = static_cast<int>(get_num(obj, "p", 2));
      sc.theta = get_num(obj, "theta", 1.0);
      sc.B = get_num(obj, "B", 0.0);
      sc.b1 = get_num(obj, "b1", 0.0);
      sc.r0 = get_num(obj, "r0", 0.0);
      break;
    }
    case Command::lemmas: {
      sc.count = static_cast<int>(get_num(obj, "count", 20));
      if (sc.count < 1) throw ConfigError(where + ": count must be >= 1");
      if (obj.contains("seed")) {
        sc.seed = static_cast<std::uint64_t>(get_num(obj, "seed", 0));
        sc.seed_set = true;
      }
      sc.growth_horizon = get_num(obj, "growth_horizon", 1e4);
      sc.check_horizon = get_num(obj, "check_horizon", 20.0);
      break;
    }
    case Command::isoperimetric:
    case Command::sobolev: {
      if (!obj.contains("profile")) throw ConfigError(where + ": needs a profile");
      sc.profile = parse_profile(obj["profile"], where);
      if (obj.contains("manifold")) {
        const json& mo = obj["manifold"];
        expect_keys(mo, {"dimension", "warp", "warp_profile", "path"}, where + ".manifold");
        sc.manifold.dimension = static_cast<int>(get_num(mo, "dimension", 2));
        sc.manifold.warp = get_str(mo, "warp", "euclidean");
        if (mo.contains("warp_profile"))
          sc.manifold.warp_profile = parse_profile(mo["warp_profile"], where + ".manifold");
        sc.manifold.path = get_str(mo, "path", "");
      }
      parse_radii();
      sc.bg_horizon = get_num(obj, "horizon", 1000.0);
      if (sc.command == Command::sobolev) {
        if (obj.contains("test_function"))
          sc.test_functions.push_back(parse_test_function(obj["test_function"], where));
        if (obj.contains("test_functions")) {
          for (const auto& tf : obj["test_functions"])
            sc.test_functions.push_back(parse_test_function(tf, where));
        }
        if (sc.test_functions.empty())
          throw ConfigError(where + ": needs test_function or test_functions");
      }
      break;
    }
    case Command::submanifold: {
      sc.shape = get_str(obj, "shape", "flat_disk");
      if (sc.shape != "flat_disk" && sc.shape != "round_sphere")
        throw ConfigError(where + ": shape must be flat_disk or round_sphere");
      sc.n = static_cast<int>(get_num(obj, "n", 2));
      sc.p = static_cast<int>(get_num(obj, "p", 2));
      sc.f_const = get_num(obj, "f", 1.0);
      break;
    }
    case Command::abp: {
      if (!obj.contains("profile")) throw ConfigError(where + ": needs a profile");
      sc.profile = parse_profile(obj["profile"], where);
      if (obj.contains("manifold")) {
        const json& mo = obj["manifold"];
        expect_keys(mo, {"dimension", "warp", "warp_profile", "path"}, where + ".manifold");
        sc.manifold.dimension = static_cast<int>(get_num(mo, "dimension", 2));
        sc.manifold.warp = get_str(mo, "warp", "euclidean");
        if (mo.contains("warp_profile"))
          sc.manifold.warp_profile = parse_profile(mo["warp_profile"], where + ".manifold");
        sc.manifold.path = get_str(mo, "path", "");
      }
      if (obj.contains("test_function"))
        sc.test_functions.push_back(parse_test_function(obj["test_function"], where));
      sc.ball_radius = get_num(obj, "radius", 1.0);
      sc.transport_r = get_num(obj, "transport_r", 10.0);
      sc.source_samples = static_cast<int>(get_num(obj, "source_samples", 1024));
      sc.epsilon_fraction = get_num(obj, "epsilon_fraction", 1e-3);
      if (!(sc.ball_radius > 0.0) || !(sc.transport_r > 2.0 * sc.ball_radius))
        throw ConfigError(where + ": abp needs radius > 0 and transport_r > 2 radius");
      break;
    }
  }
  return sc;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(source + ": top level must be an object");
  expect_keys(root, {"seed", "workers", "tolerances", "scenarios"}, source);

  RunConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(get_num(root, "seed", 0));
  cfg.workers = static_cast<int>(get_num(root, "workers", 1));
  if (cfg.workers < 1) throw ConfigError(source + ": workers must be >= 1");
  if (root.contains("tolerances"))
    cfg.tol = parse_tolerances(root["tolerances"], Tolerances{}, source + ".tolerances");
  if (!root.contains("scenarios") || !root["scenarios"].is_array())
    throw ConfigError(source + ": needs a scenarios array");

  std::set<std::string> seen;
  for (const auto& s : root["scenarios"]) {
    ScenarioConfig sc = parse_scenario(s, cfg.tol);
    if (!seen.insert(sc.id).second) throw ConfigError("duplicate scenario id: " + sc.id);
    cfg.scenarios.push_back(std::move(sc));
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

namespace {

VerificationReport run_constants(const ScenarioConfig& sc) {
  VerificationReport rep;
  InequalityParams q;
  q.n = sc.n;
  q.p = sc.p;
  q.theta = sc.theta;
  q.B = sc.B;
  q.b1 = sc.b1;
  q.r0 = sc.r0;
  rep.put_input("n", q.n);
  rep.put_input("p", q.p);
  rep.put_input("theta", q.theta);
  rep.put_input("B", q.B);
  rep.put_input("b1", q.b1);
  rep.put_input("r0", q.r0);
  if (sc.constant_case == "domain") {
    rep.put("constant", sobolev_constant_domain(q));
  } else {
    rep.put("constant", sobolev_constant_submanifold(q));
  }
  rep.require(rep.all_computed_finite(), "non-finite constant");
  return rep;
}

VerificationReport run_lemmas(const ScenarioConfig& sc, std::uint64_t global_seed) {
  LemmaSuiteOptions opt;
  opt.seed = sc.seed_set ? sc.seed : global_seed;
  opt.profile_count = sc.count;
  opt.growth_horizon = sc.growth_horizon;
  opt.check_horizon = sc.check_horizon;
  opt.slack_tol = sc.tol.slack;
  opt.asymptotic_rel = sc.tol.asymptotic_rel;
  opt.ode_tol = sc.tol.ode;

  VerificationReport rep;
  rep.put_input("count", sc.count);
  rep.put_input("seed", static_cast<double>(opt.seed));
  rep.put_input("growth_horizon", opt.growth_horizon);
  rep.put_input("check_horizon", opt.check_horizon);

  const auto entries = run_lemma_suite(opt);
  int fails = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    char key[64];
    for (const auto& c : entries[i].checks) {
      std::snprintf(key, sizeof(key), "p%02zu_%s_slack", i, to_string(c.lemma_id));
      rep.put(key, c.worst_slack);
      if (!c.pass) ++fails;
    }
  }
  rep.put("failed_checks", fails);
  rep.put_tolerance("slack", opt.slack_tol);
  rep.put_tolerance("asymptotic_rel", opt.asymptotic_rel);
  rep.require(fails == 0, std::to_string(fails) + " lemma checks failed");
  rep.require(rep.all_computed_finite(), "non-finite slack");
  return rep;
}

VerificationReport run_isoperimetric(const ScenarioConfig& sc) {
  DomainCheckOptions opt;
  opt.bg_horizon = sc.bg_horizon;
  opt.ode_tol = sc.tol.ode;
  opt.quad_rel = sc.tol.quadrature;
  opt.slack_tol = sc.tol.slack;
  const double extent = std::max(sc.bg_horizon, sc.radii.back()) * 1.001;
  const CurvatureProfile p = sc.profile.build();
  const ModelManifold m = sc.manifold.build(sc.profile, extent, sc.tol.ode);

  VerificationReport rep;
  rep.put_input("dimension", m.dimension());
  rep.put_input("bg_horizon", sc.bg_horizon);
  for (double r : sc.radii) {
    VerificationReport one = isoperimetric_check(m, p, r, opt);
    char prefix[48];
    std::snprintf(prefix, sizeof(prefix), "r%g_", r);
    for (const auto& [k, v] : one.computed) rep.put(prefix + k, v);
    if (one.status != ReportStatus::PASS) rep.require(false, prefix + one.detail);
  }
  rep.put_tolerance("slack", opt.slack_tol);
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

VerificationReport run_sobolev(const ScenarioConfig& sc) {
  DomainCheckOptions opt;
  opt.bg_horizon = sc.bg_horizon;
  opt.ode_tol = sc.tol.ode;
  opt.quad_rel = sc.tol.quadrature;
  opt.slack_tol = sc.tol.slack;
  const double extent = std::max(sc.bg_horizon, sc.radii.back()) * 1.001;
  const CurvatureProfile p = sc.profile.build();
  const ModelManifold m = sc.manifold.build(sc.profile, extent, sc.tol.ode);

  VerificationReport rep;
  rep.put_input("dimension", m.dimension());
  rep.put_input("bg_horizon", sc.bg_horizon);
  for (std::size_t fi = 0; fi < sc.test_functions.size(); ++fi) {
    for (double r : sc.radii) {
      VerificationReport one = sobolev_check_domain(m, p, r, sc.test_functions[fi], opt);
      char prefix[48];
      std::snprintf(prefix, sizeof(prefix), "f%zu_r%g_", fi, r);
      for (const auto& [k, v] : one.computed) rep.put(prefix + k, v);
      if (one.status != ReportStatus::PASS) rep.require(false, prefix + one.detail);
    }
  }
  rep.put_tolerance("slack", opt.slack_tol);
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

VerificationReport run_submanifold(const ScenarioConfig& sc) {
  SubmanifoldSpec spec;
  spec.kind = sc.shape == "flat_disk" ? SubmanifoldSpec::Kind::flat_disk
                                      : SubmanifoldSpec::Kind::round_sphere;
  spec.n = sc.n;
  spec.p = sc.p;
  return submanifold_check_flat(spec, sc.f_const, sc.tol.slack);
}

VerificationReport run_abp(const ScenarioConfig& sc) {
  const CurvatureProfile p = sc.profile.build();
  const double extent = (sc.ball_radius + sc.transport_r) * 1.001;
  const ModelManifold m = sc.manifold.build(sc.profile, extent, sc.tol.ode);
  const RadialTestFunction f = sc.test_functions.empty() ? RadialTestFunction::constant(1.0)
                                                         : sc.test_functions.front();

  VerificationReport rep;
  rep.put_input("dimension", m.dimension());
  rep.put_input("radius", sc.ball_radius);
  rep.put_input("transport_r", sc.transport_r);

  const NeumannSolution sol = solve_neumann_radial(m, p, sc.ball_radius, f);
  rep.put("f_scale", sol.f_scale());
  rep.put("boundary_flux_error", sol.boundary_flux_error());
  rep.put("normalization_error", sol.normalization_error());

  const HessianBoundReport hess = hessian_bound_check(sol);
  rep.put("hessian_worst_slack", hess.worst_slack);

  TransportOptions topt;
  topt.source_samples = sc.source_samples;
  topt.epsilon_fraction = sc.epsilon_fraction;
  const TransportState ts = transport_radial(sol, sc.transport_r, topt);
  const auto uncovered = covering_check(
      ts, sc.ball_radius, sc.transport_r,
      linear_grid(sc.ball_radius * 1.01, (sc.transport_r - sc.ball_radius) * 0.99, 257));
  rep.put("uncovered_targets", static_cast<double>(uncovered.size()));

  const JacobianBoundReport jac = jacobian_bound_check(ts, p, sol, 65, sc.tol.ode);
  rep.put("jacobian_worst_slack", jac.worst_slack);
  rep.put("annulus_volume", jac.annulus_volume);
  rep.put("transport_mass", jac.transport_mass);
  rep.put("bound_mass", jac.bound_mass);
  rep.put("conjugate_geodesics", jac.conjugate_geodesics);

  // Sensitivity of the mass chain to the source cutoff.
  TransportOptions topt2 = topt;
  topt2.epsilon_fraction = 0.5 * sc.epsilon_fraction;
  const JacobianBoundReport jac2 =
      jacobian_bound_check(transport_radial(sol, sc.transport_r, topt2), p, sol, 65, sc.tol.ode);
  rep.put("epsilon_sensitivity",
          std::abs(jac2.transport_mass - jac.transport_mass) /
              std::max(1.0, std::abs(jac.transport_mass)));

  rep.put_tolerance("equality", sc.tol.equality);
  rep.put_tolerance("slack", sc.tol.slack);
  rep.put_tolerance("chain_rel", 1e-6);

  rep.require(sol.boundary_flux_error() <= sc.tol.equality, "boundary flux");
  rep.require(hess.worst_slack >= -sc.tol.slack, "hessian bound");
  rep.require(uncovered.empty(), "covering incomplete");
  rep.require(jac.worst_slack >= -sc.tol.slack, "jacobian bound");
  const double scale = std::max(1.0, jac.bound_mass);
  rep.require(jac.annulus_volume <= jac.transport_mass + 1e-6 * scale, "mass chain (annulus)");
  rep.require(jac.transport_mass <= jac.bound_mass + 1e-6 * scale, "mass chain (bound)");
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

}  // namespace

VerificationReport run_scenario(const ScenarioConfig& sc, std::uint64_t global_seed) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  try {
    switch (sc.command) {
      case Command::constants: rep = run_constants(sc); break;
      case Command::lemmas: rep = run_lemmas(sc, global_seed); break;
      case Command::isoperimetric: rep = run_isoperimetric(sc); break;
      case Command::sobolev: rep = run_sobolev(sc); break;
      case Command::submanifold: rep = run_submanifold(sc); break;
      case Command::abp: rep = run_abp(sc); break;
    }
  } catch (const std::exception& e) {
    rep.status = ReportStatus::NUMERICAL_FAILURE;
    rep.detail = e.what();
  }
  rep.scenario_id = sc.id;
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<VerificationReport> run_scenarios(const RunConfig& cfg, int workers_override,
                                              std::optional<std::uint64_t> seed_override) {
  const std::uint64_t seed = seed_override.value_or(cfg.seed);
  const int workers =
      std::max(1, workers_override > 0 ? workers_override : cfg.workers);
  std::vector<VerificationReport> reports(cfg.scenarios.size());

  if (workers == 1 || cfg.scenarios.size() <= 1) {
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
      reports[i] = run_scenario(cfg.scenarios[i], seed);
    return reports;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.scenarios.size()) return;
      reports[i] = run_scenario(cfg.scenarios[i], seed);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min<int>(workers, cfg.scenarios.size()); ++w)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return reports;
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool any_fail = false, any_numfail = false;
  for (const auto& r : reports) {
    any_fail = any_fail || r.status == ReportStatus::FAIL;
    any_numfail = any_numfail || r.status == ReportStatus::NUMERICAL_FAILURE;
  }
  if (any_fail) return 2;
  if (any_numfail) return 3;
  return 0;
}

}  // namespace geodecay
