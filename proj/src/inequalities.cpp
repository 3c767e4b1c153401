#include "geodecay/inequalities.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "geodecay/common.hpp"
#include "geodecay/quadrature.hpp"

namespace geodecay {

namespace {

void check_params(const InequalityParams& q, bool submanifold) {
  if (q.n < 2) throw std::invalid_argument("InequalityParams: n must be >= 2");
  if (submanifold && q.p < 2)
    throw std::invalid_argument("InequalityParams: the submanifold constant needs p >= 2");
  if (!(q.theta >= 0.0) || !(q.theta <= 1.0 + 1e-10) || !(q.B >= 0.0) || !(q.b1 >= 0.0) ||
      !(q.r0 >= 0.0) || !std::isfinite(q.theta + q.B + q.b1 + q.r0))
    throw std::invalid_argument("InequalityParams: fields out of range");
}

double growth_factor(double B) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * B)); }

// 2 b1 / (e^{2 b1} - 1) -> 1 as b1 -> 0; series below the cancellation floor.
double degenerate_factor(double b1) {
  const double x = 2.0 * b1;
  if (b1 < 1e-12) return 1.0 / (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
  return x / (std::exp(x) - 1.0);
}

}  // namespace

double sobolev_constant_domain(const InequalityParams& q) {
  check_params(q, false);
  const double denom = growth_factor(q.B) * std::pow(2.0 * std::exp(q.r0 * q.b1) - 1.0, q.n - 1);
  return q.n * std::pow(unit_ball_volume(q.n) * q.theta / denom, 1.0 / q.n);
}

double sobolev_constant_submanifold(const InequalityParams& q) {
  check_params(q, true);
  const int n = q.n, p = q.p;
  const double ratio = degenerate_factor(q.b1) * (n + p) * unit_ball_volume(n + p) * q.theta /
                       (p * unit_ball_volume(p) *
                        std::pow(2.0 * std::exp(q.r0 * q.b1) - 1.0, n + p - 1) *
                        growth_factor(q.B));
  return n * std::pow(ratio, 1.0 / n);
}

RadialTestFunction RadialTestFunction::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("RadialTestFunction: constant must be positive");
  return RadialTestFunction(Kind::constant, {c});
}

RadialTestFunction RadialTestFunction::affine(double a, double b) {
  if (!(a > 0.0) || !(b >= 0.0))
    throw std::invalid_argument("RadialTestFunction: affine needs a > 0, b >= 0");
  return RadialTestFunction(Kind::affine, {a, b});
}

RadialTestFunction RadialTestFunction::bump(double amplitude, double width) {
  if (!(amplitude > 0.0) || !(width > 0.0))
    throw std::invalid_argument("RadialTestFunction: bump needs positive amplitude and width");
  return RadialTestFunction(Kind::bump, {amplitude, width});
}

double RadialTestFunction::value(double r) const {
  switch (kind_) {
    case Kind::constant: return params_[0];
    case Kind::affine: return std::max(0.0, params_[0] - params_[1] * r);
    case Kind::bump: return params_[0] * std::exp(-(r / params_[1]) * (r / params_[1]));
  }
  return 0.0;
}

double RadialTestFunction::deriv(double r) const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::affine: return (params_[0] - params_[1] * r > 0.0) ? -params_[1] : 0.0;
    case Kind::bump: return -2.0 * r / (params_[1] * params_[1]) * value(r);
  }
  return 0.0;
}

double RadialTestFunction::second(double r) const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::affine: return 0.0;
    case Kind::bump: {
      const double w2 = params_[1] * params_[1];
      return (4.0 * r * r / (w2 * w2) - 2.0 / w2) * value(r);
    }
  }
  return 0.0;
}

double RadialTestFunction::min_on(double R) const {
  // All kinds are nonincreasing in r.
  return value(R);
}

RadialTestFunction RadialTestFunction::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("RadialTestFunction: scale must be positive");
  switch (kind_) {
    case Kind::constant: return constant(s * params_[0]);
    case Kind::affine: return affine(s * params_[0], s * params_[1]);
    case Kind::bump: return bump(s * params_[0], params_[1]);
  }
  throw std::logic_error("RadialTestFunction: unknown kind");
}

std::string RadialTestFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << "const(" << params_[0] << ")"; break;
    case Kind::affine: os << "affine(" << params_[0] << "-" << params_[1] << "r)"; break;
    case Kind::bump: os << "bump(" << params_[0] << ",w=" << params_[1] << ")"; break;
  }
  return os.str();
}

namespace {

struct DomainQuantities {
  ProfileInvariants inv;
  AvrEstimate avr;
  double constant;
};

DomainQuantities domain_setup(const ModelManifold& m, const CurvatureProfile& p,
                              double ball_radius, const DomainCheckOptions& opt) {
  if (!(ball_radius > 0.0) || ball_radius > m.radial_extent())
    throw std::invalid_argument("domain check: ball radius outside the working domain");
  DomainQuantities q;
  q.inv = profile_invariants(p, std::max(opt.bg_horizon, 1e4));
  const double horizon = std::min(opt.bg_horizon, m.radial_extent());
  const auto bg = bishop_gromov_ratio(
      m, p, geometric_grid(std::min(ball_radius, horizon / 100.0), horizon, opt.bg_points),
      opt.ode_tol, opt.quad_rel);
  q.avr = bg.avr;
  InequalityParams ip;
  ip.n = m.dimension();
  ip.theta = std::min(1.0, q.avr.theta);
  ip.B = q.inv.B;
  ip.b1 = q.inv.b1;
  ip.r0 = ball_radius;
  q.constant = sobolev_constant_domain(ip);
  return q;
}

}  // namespace

VerificationReport isoperimetric_check(const ModelManifold& m, const CurvatureProfile& p,
                                       double ball_radius, const DomainCheckOptions& opt) {
  const DomainQuantities q = domain_setup(m, p, ball_radius, opt);
  const int n = m.dimension();
  const double area = sphere_area(m, ball_radius);
  const double vol = ball_volume(m, ball_radius, opt.quad_rel);
  const double lhs = area;
  const double rhs = (q.constant - 2.0 * (n - 1) * q.inv.b1 * std::pow(vol, 1.0 / n)) *
                     std::pow(vol, (n - 1.0) / n);
  const double margin = lhs - rhs;

  VerificationReport rep;
  rep.put_input("n", n);
  rep.put_input("ball_radius", ball_radius);
  rep.put_input("bg_horizon", q.avr.horizon);
  rep.put("B", q.inv.B);
  rep.put("b1", q.inv.b1);
  rep.put("theta", q.avr.theta);
  rep.put("bg_monotone_violation", q.avr.monotone_violation);
  rep.put("r0", ball_radius);
  rep.put("constant", q.constant);
  rep.put("area", area);
  rep.put("volume", vol);
  rep.put("lhs", lhs);
  rep.put("rhs", rhs);
  rep.put("margin", margin);
  rep.put_tolerance("slack", opt.slack_tol);
  rep.require(margin >= -opt.slack_tol * std::max(1.0, std::abs(lhs)), "isoperimetric margin");
  rep.require(q.avr.theta <= 1.0 + 1e-10, "theta exceeds 1");
  rep.require(q.avr.monotone_violation <= 1e-10, "volume ratio not monotone");
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

VerificationReport sobolev_check_domain(const ModelManifold& m, const CurvatureProfile& p,
                                        double ball_radius, const RadialTestFunction& f,
                                        const DomainCheckOptions& opt) {
  if (!(f.min_on(ball_radius) > 0.0))
    throw std::invalid_argument("sobolev_check_domain: test function must be positive on the ball");
  const DomainQuantities q = domain_setup(m, p, ball_radius, opt);
  const int n = m.dimension();
  const double nv = n * unit_ball_volume(n);
  auto measure = [&](auto&& g) {
    return nv * integrate([&](double r) { return g(r) * std::pow(m.warp(r), n - 1); }, 0.0,
                          ball_radius, opt.quad_rel, 1e-300);
  };

  const double boundary_term = f.value(ball_radius) * sphere_area(m, ball_radius);
  const double gradient_term = measure([&](double r) { return std::abs(f.deriv(r)); });
  const double mass_term = 2.0 * (n - 1) * q.inv.b1 * measure([&](double r) { return f.value(r); });
  const double lhs = boundary_term + gradient_term + mass_term;
  const double fpow = measure([&](double r) { return std::pow(f.value(r), n / (n - 1.0)); });
  const double rhs = q.constant * std::pow(fpow, (n - 1.0) / n);
  const double margin = lhs - rhs;

  VerificationReport rep;
  rep.put_input("n", n);
  rep.put_input("ball_radius", ball_radius);
  rep.put_input("bg_horizon", q.avr.horizon);
  rep.put("B", q.inv.B);
  rep.put("b1", q.inv.b1);
  rep.put("theta", q.avr.theta);
  rep.put("r0", ball_radius);
  rep.put("constant", q.constant);
  rep.put("boundary_term", boundary_term);
  rep.put("gradient_term", gradient_term);
  rep.put("mass_term", mass_term);
  rep.put("lhs", lhs);
  rep.put("rhs", rhs);
  rep.put("margin", margin);
  rep.put_tolerance("slack", opt.slack_tol);
  rep.require(margin >= -opt.slack_tol * std::max(1.0, std::abs(lhs)), "sobolev margin");
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

VerificationReport submanifold_check_flat(const SubmanifoldSpec& s, double f_const,
                                          double slack_tol) {
  if (!(f_const > 0.0))
    throw std::invalid_argument("submanifold_check_flat: test function must be positive");
  const int n = s.n, p = s.p;
  InequalityParams ip;
  ip.n = n;
  ip.p = p;
  ip.theta = 1.0;
  ip.B = 0.0;
  ip.b1 = 0.0;
  ip.r0 = 1.0;
  const double C = sobolev_constant_submanifold(ip);

  double area = 0.0, boundary = 0.0, mean_curv = 0.0;
  if (s.kind == SubmanifoldSpec::Kind::flat_disk) {
    area = unit_ball_volume(n);
    boundary = unit_sphere_area(n);
    mean_curv = 0.0;
  } else {
    area = unit_sphere_area(n + 1);
    boundary = 0.0;
    mean_curv = n;
  }
  // LHS of the submanifold inequality for constant f in flat space: the
  // gradient vanishes, so the middle term is f |H| area, and 2 n b1 + 1 = 1.
  const double lhs = f_const * (boundary + mean_curv * area + area);
  const double rhs = C * std::pow(std::pow(f_const, n / (n - 1.0)) * area, (n - 1.0) / n);
  const double margin = lhs - rhs;

  VerificationReport rep;
  rep.put_input("n", n);
  rep.put_input("p", p);
  rep.put_input("f", f_const);
  rep.put_input("shape", s.kind == SubmanifoldSpec::Kind::flat_disk ? 0.0 : 1.0);
  rep.put("constant", C);
  rep.put("area", area);
  rep.put("boundary", boundary);
  rep.put("mean_curvature", mean_curv);
  rep.put("lhs", lhs);
  rep.put("rhs", rhs);
  rep.put("margin", margin);
  rep.put_tolerance("slack", slack_tol);
  rep.require(margin >= -slack_tol * std::max(1.0, std::abs(lhs)), "submanifold margin");
  rep.require(rep.all_computed_finite(), "non-finite quantity");
  return rep;
}

}  // namespace geodecay
