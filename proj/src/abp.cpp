#include "geodecay/abp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geodecay/common.hpp"
#include "geodecay/quadrature.hpp"
#include "geodecay/rk45.hpp"

namespace geodecay {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

double NeumannSolution::integrand(double r) const {
  const int n = m_.dimension();
  const double fv = f_.value(r);
  return n * std::pow(fv, n / (n - 1.0)) - 2.0 * (n - 1) * b1_ * fv - std::abs(f_.deriv(r));
}

double NeumannSolution::integrand_deriv(double r) const {
  const int n = m_.dimension();
  const double fv = f_.value(r);
  const double fd = f_.deriv(r);
  const double fs = f_.second(r);
  const double sgn = fd > 0.0 ? 1.0 : (fd < 0.0 ? -1.0 : 0.0);
  return (n * n / (n - 1.0)) * std::pow(fv, 1.0 / (n - 1.0)) * fd - 2.0 * (n - 1) * b1_ * fd -
         sgn * fs;
}

std::size_t NeumannSolution::locate(double r) const {
  if (r < 0.0 || r > a_ * (1.0 + 1e-12))
    throw std::out_of_range("NeumannSolution: r outside [0, a]");
  r = std::min(r, t_.back());
  auto it = std::upper_bound(t_.begin(), t_.end(), r);
  std::size_t i = (it == t_.begin()) ? 0 : (it - t_.begin() - 1);
  if (i + 1 >= t_.size()) i = t_.size() - 2;
  while (t_[i + 1] <= t_[i]) ++i;
  return i;
}

double NeumannSolution::flux_integral(double r) const {
  const std::size_t i = locate(r);
  const double h = t_[i + 1] - t_[i];
  return detail::Quintic::value((r - t_[i]) / h, h, i_[i], id_[i], idd_[i], i_[i + 1], id_[i + 1],
                                idd_[i + 1]);
}

double NeumannSolution::u(double r) const {
  const std::size_t i = locate(r);
  const double h = t_[i + 1] - t_[i];
  return detail::Quintic::value((r - t_[i]) / h, h, u_[i], ud_[i], udd_[i], u_[i + 1], ud_[i + 1],
                                udd_[i + 1]);
}

double NeumannSolution::u_prime(double r) const {
  if (r <= 1e-13 * a_) return 0.0;
  const int n = m_.dimension();
  return flux_integral(r) / (std::pow(m_.warp(r), n - 1) * f_.value(r));
}

double NeumannSolution::delta_u(double r) const {
  if (r <= 1e-13 * a_) return integrand(0.0) / f_.value(0.0);
  const double fv = f_.value(r);
  return integrand(r) / fv - u_prime(r) * f_.deriv(r) / fv;
}

double NeumannSolution::u_second(double r) const {
  const int n = m_.dimension();
  if (r <= 1e-13 * a_) return integrand(0.0) / (n * f_.value(0.0));
  return delta_u(r) - (n - 1) * (m_.warp_deriv(r) / m_.warp(r)) * u_prime(r);
}

NeumannSolution solve_neumann_radial(const ModelManifold& m, const CurvatureProfile& p, double a,
                                     const RadialTestFunction& f, double flux_tol) {
  if (!(a > 0.0) || a > m.radial_extent())
    throw std::invalid_argument("solve_neumann_radial: ball radius outside the working domain");
  if (!(f.min_on(a) > 0.0))
    throw std::invalid_argument("solve_neumann_radial: test function must be positive on the ball");

  const int n = m.dimension();
  const double nv = n * unit_ball_volume(n);
  const double b1 = profile_invariants(p).b1;

  auto weighted = [&](auto&& g) {
    return nv * integrate([&](double r) { return g(r) * std::pow(m.warp(r), n - 1); }, 0.0, a,
                          1e-12, 1e-300);
  };
  const double lhs = f.value(a) * nv * std::pow(m.warp(a), n - 1) +
                     weighted([&](double r) { return std::abs(f.deriv(r)); }) +
                     2.0 * (n - 1) * b1 * weighted([&](double r) { return f.value(r); });
  const double den = n * weighted([&](double r) { return std::pow(f.value(r), n / (n - 1.0)); });
  const double sigma = std::pow(lhs / den, n - 1.0);

  NeumannSolution sol(m, p, f.scaled(sigma), a);
  sol.b1_ = b1;
  sol.f_scale_ = sigma;

  // Normalization residual after scaling (both sides are now equal by
  // construction; this measures quadrature error only).
  {
    const RadialTestFunction& fs = sol.f_;
    const double lhs2 = fs.value(a) * nv * std::pow(m.warp(a), n - 1) +
                        weighted([&](double r) { return std::abs(fs.deriv(r)); }) +
                        2.0 * (n - 1) * b1 * weighted([&](double r) { return fs.value(r); });
    const double rhs2 =
        n * weighted([&](double r) { return std::pow(fs.value(r), n / (n - 1.0)); });
    sol.normalization_error_ = std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2));
  }

  // Integrate I' = g phi^{n-1}, u' = I/(phi^{n-1} f); the second slot is u.
  auto rhs = [&sol, &m, n](double t, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = sol.integrand(t) * std::pow(m.warp(t), n - 1);
    if (t <= 1e-300) {
      dy[1] = 0.0;
    } else {
      dy[1] = y[0] / (std::pow(m.warp(t), n - 1) * sol.f_.value(t));
    }
  };

  std::vector<double> cuts{0.0};
  for (double k : m.warp_kinks())
    if (k > 0.0 && k < a) cuts.push_back(k);
  for (double k : p.kinks())
    if (k > 0.0 && k < a) cuts.push_back(k);
  cuts.push_back(a);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  detail::RkOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  std::vector<double> y{0.0, 0.0};
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    detail::rk45(rhs, cuts[seg], cuts[seg + 1], y, opt,
                 [&](double t, const std::vector<double>& yy, const std::vector<double>& dy) {
                   const double phi = m.warp(t);
                   const double g = sol.integrand(t);
                   sol.t_.push_back(t);
                   sol.i_.push_back(yy[0]);
                   sol.id_.push_back(dy[0]);
                   sol.idd_.push_back(sol.integrand_deriv(t) * std::pow(phi, n - 1) +
                                      (t > 0.0 ? (n - 1) * g * std::pow(phi, n - 2) *
                                                     m.warp_deriv(t)
                                               : (n == 2 ? g : 0.0)));
                   sol.u_.push_back(yy[1]);
                   sol.ud_.push_back(dy[1]);
                   const double fv = sol.f_.value(t);
                   double usec;
                   if (t <= 1e-300) {
                     usec = g / (n * fv);
                   } else {
                     const double up = dy[1];
                     usec = g / fv - up * sol.f_.deriv(t) / fv -
                            (n - 1) * (m.warp_deriv(t) / phi) * up;
                   }
                   sol.udd_.push_back(usec);
                   y = yy;
                 });
  }

  sol.boundary_flux_error_ = std::abs(sol.u_prime(a) - 1.0);
  if (sol.boundary_flux_error_ > flux_tol)
    throw NumericalFailure("solve_neumann_radial: boundary flux " +
                           std::to_string(sol.u_prime(a)) + " deviates from 1");
  return sol;
}

HessianBoundReport hessian_bound_check(const NeumannSolution& sol, int samples) {
  const int n = sol.manifold().dimension();
  const double a = sol.ball_radius();
  HessianBoundReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (double r : linear_grid(1e-4 * a, a * (1.0 - 1e-9), samples)) {
    if (std::abs(sol.u_prime(r)) >= 1.0) continue;
    const double slack = std::pow(sol.test_function().value(r), 1.0 / (n - 1.0)) -
                         2.0 * (n - 1.0) / n * sol.b1() - sol.delta_u(r) / n;
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.location = r;
    }
  }
  return rep;
}

TransportState transport_radial(const NeumannSolution& sol, double r,
                                const TransportOptions& opt) {
  const double a = sol.ball_radius();
  const ModelManifold& m = sol.manifold();
  if (!(r > 0.0)) throw std::invalid_argument("transport_radial: r must be > 0");
  if (a + r > m.radial_extent() * (1.0 + 1e-12))
    throw std::invalid_argument(
        "transport_radial: manifold working domain must reach a + r for the image radii");

  TransportState ts;
  ts.transport_time = r;
  ts.epsilon = opt.epsilon_fraction * a;

  // Competitor values of r u(t) on the fixed grid, reused for every source.
  std::vector<double> tgrid = linear_grid(0.0, a, opt.competitor_samples);
  std::vector<double> ru(tgrid.size());
  for (std::size_t i = 0; i < tgrid.size(); ++i) ru[i] = r * sol.u(tgrid[i]);

  for (double s : linear_grid(ts.epsilon, a * (1.0 - 1e-9), opt.source_samples)) {
    const double up = sol.u_prime(s);
    if (up < -1e-12)
      throw std::invalid_argument("transport_radial: u' < 0 at s = " + std::to_string(s) +
                                  " (inward transport unsupported)");
    if (up <= 0.0 || up >= 1.0) continue;
    ts.s.push_back(s);
    ts.u_prime.push_back(up);
    ts.u_second.push_back(sol.u_second(s));
    ts.rho.push_back(s + r * up);
  }

  const std::size_t N = ts.s.size();
  ts.contact.assign(N, 0);
  ts.jacobian.assign(N, kNan);
  const int n = m.dimension();

  for (std::size_t i = 0; i < N; ++i) {
    const double s = ts.s[i];
    const double rho = ts.rho[i];
    const double target = r * sol.u(s) + 0.5 * r * r * ts.u_prime[i] * ts.u_prime[i];

    // Coarse minimum of the tilted distance functional over the ball...
    auto F = [&](double t) { return r * sol.u(t) + 0.5 * (rho - t) * (rho - t); };
    std::size_t best = 0;
    double fbest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < tgrid.size(); ++j) {
      const double v = ru[j] + 0.5 * (rho - tgrid[j]) * (rho - tgrid[j]);
      if (v < fbest) {
        fbest = v;
        best = j;
      }
    }
    // ... then golden-section refinement in the bracketing cell.
    double lo = tgrid[best == 0 ? 0 : best - 1];
    double hi = tgrid[std::min(best + 1, tgrid.size() - 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = F(x1), f2 = F(x2);
    for (int it = 0; it < 60 && (hi - lo) > 1e-13 * std::max(1.0, a); ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = F(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = F(x2);
      }
    }
    fbest = std::min({fbest, f1, f2});

    const double tol = 1e-9 * std::max(1.0, std::abs(target));
    if (fbest >= target - tol) {
      ts.contact[i] = 1;
      const double drho_ds = 1.0 + r * ts.u_second[i];
      if (drho_ds <= 0.0) {
        ++ts.conjugate_count;
        ts.contact[i] = 0;
      } else {
        ts.jacobian[i] = drho_ds * std::pow(m.warp(rho) / m.warp(s), n - 1);
      }
    }
  }
  return ts;
}

std::vector<double> covering_check(const TransportState& ts, double a, double r,
                                   const std::vector<double>& targets) {
  std::vector<double> uncovered;
  if (!(r > 2.0 * a)) return uncovered;  // empty annulus, trivially covered

  // Consecutive contact samples with images [rho_k, rho_{k+1}] cover that
  // whole interval (rho is continuous in s); allow one image cell of slop at
  // the ends of each run.
  struct Run {
    double lo, hi, cell;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < ts.s.size();) {
    if (!ts.contact[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ts.s.size() && ts.contact[j + 1]) ++j;
    double cell = 0.0;
    for (std::size_t k = i; k < j; ++k)
      cell = std::max(cell, std::abs(ts.rho[k + 1] - ts.rho[k]));
    if (j == i && i + 1 < ts.rho.size()) cell = std::abs(ts.rho[i + 1] - ts.rho[i]);
    runs.push_back({std::min(ts.rho[i], ts.rho[j]), std::max(ts.rho[i], ts.rho[j]), cell});
    i = j + 1;
  }

  for (double target : targets) {
    if (!(target > a) || !(target < r - a)) continue;
    bool hit = false;
    for (const auto& run : runs) {
      if (target >= run.lo - run.cell && target <= run.hi + run.cell) {
        hit = true;
        break;
      }
    }
    if (!hit) uncovered.push_back(target);
  }
  return uncovered;
}

JacobianBoundReport jacobian_bound_check(const TransportState& ts, const CurvatureProfile& p,
                                         const NeumannSolution& sol, int time_samples,
                                         double ode_tol) {
  const ModelManifold& m = sol.manifold();
  const int n = m.dimension();
  const double r = ts.transport_time;
  const double a = sol.ball_radius();
  JacobianBoundReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  rep.conjugate_geodesics = ts.conjugate_count;

  const std::vector<double> tgrid = linear_grid(0.0, r, time_samples);
  std::vector<double> det_r(ts.s.size(), 0.0), bound_r(ts.s.size(), 0.0);

  for (std::size_t i = 0; i < ts.s.size(); ++i) {
    if (!ts.contact[i]) continue;
    const double s = ts.s[i];
    const double speed = ts.u_prime[i];
    const double q11 = ts.u_second[i];
    const double g0 = speed * m.warp_deriv(s) / m.warp(s);

    const ScaledProfile sp = scale_profile(p, speed, s);
    const OdeSolution psi1 = solve_psi1(sp, r, ode_tol);
    const OdeSolution psi2 = solve_psi2(sp, r, ode_tol);

    bool conjugate = false;
    for (double t : tgrid) {
      const double radial = 1.0 + t * q11;
      if (radial <= 0.0) {
        conjugate = true;
        break;
      }
      const double det = radial * std::pow(m.warp(s + t * speed) / m.warp(s), n - 1);
      const double psi = psi2.value(t) + g0 * psi1.value(t);
      const double bound = radial * std::pow(psi, n - 1);
      const double slack = (bound - det) / std::max(1.0, std::abs(bound));
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_s = s;
        rep.worst_t = t;
      }
      if (t == r) {
        det_r[i] = det;
        bound_r[i] = bound;
      }
    }
    if (conjugate) {
      ++rep.conjugate_geodesics;
      det_r[i] = bound_r[i] = 0.0;
    }
  }

  // Mass chain per the change-of-variables/covering argument: integrate over
  // the contact set with the volume weight n|B^n| phi^{n-1}(s) ds.
  const double nv = n * unit_ball_volume(n);
  double mass_det = 0.0, mass_bound = 0.0;
  for (std::size_t i = 0; i + 1 < ts.s.size(); ++i) {
    if (!ts.contact[i] || !ts.contact[i + 1]) continue;
    const double w0 = std::pow(m.warp(ts.s[i]), n - 1);
    const double w1 = std::pow(m.warp(ts.s[i + 1]), n - 1);
    const double ds = ts.s[i + 1] - ts.s[i];
    mass_det += 0.5 * ds * (det_r[i] * w0 + det_r[i + 1] * w1);
    mass_bound += 0.5 * ds * (bound_r[i] * w0 + bound_r[i + 1] * w1);
  }
  rep.transport_mass = nv * mass_det;
  rep.bound_mass = nv * mass_bound;
  rep.annulus_volume =
      (r - a > a) ? ball_volume(m, r - a) - ball_volume(m, a) : 0.0;
  return rep;
}

}  // namespace geodecay
