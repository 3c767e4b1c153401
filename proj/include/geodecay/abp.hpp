#pragma once

#include <vector>

#include "geodecay/inequalities.hpp"
#include "geodecay/model_manifold.hpp"
#include "geodecay/ode.hpp"
#include "geodecay/profiles.hpp"

namespace geodecay {

// Radial reduction of the Neumann problem
//   div(f Du) = n f^{n/(n-1)} - 2(n-1) b1 f - |Df|   in the ball of radius a,
//   <Du, nu> = 1                                      on its boundary,
// after scaling f so that the two sides of the Sobolev inequality balance:
//   f(a)|bdry| + int |Df| + 2(n-1) b1 int f = n int f^{n/(n-1)}.
// u' is recovered from the cumulative flux integral
//   u'(r) = (phi^{n-1} f)^{-1} int_0^r (n f^{n/(n-1)} - 2(n-1) b1 f - |f'|) phi^{n-1},
// which makes u'(a) = 1 a divergence-theorem identity; its numerical
// deviation is a quadrature diagnostic. The Laplacian is assembled
// analytically from the integrand (Delta u = g/f - u' f'/f), never by finite
// differences.
class NeumannSolution {
 public:
  double u(double r) const;
  double u_prime(double r) const;
  double delta_u(double r) const;
  double u_second(double r) const;

  double ball_radius() const { return a_; }
  double f_scale() const { return f_scale_; }
  const RadialTestFunction& test_function() const { return f_; }
  const ModelManifold& manifold() const { return m_; }
  const CurvatureProfile& profile() const { return p_; }
  double b1() const { return b1_; }

  double boundary_flux_error() const { return boundary_flux_error_; }
  double normalization_error() const { return normalization_error_; }

 private:
  friend NeumannSolution solve_neumann_radial(const ModelManifold&, const CurvatureProfile&,
                                              double, const RadialTestFunction&, double);
  NeumannSolution(ModelManifold m, CurvatureProfile p, RadialTestFunction f, double a)
      : m_(std::move(m)), p_(std::move(p)), f_(f), a_(a) {}
  double flux_integral(double r) const;  // dense I(r)
  double integrand(double r) const;      // g(r) = n f^{n/(n-1)} - 2(n-1) b1 f - |f'|
  double integrand_deriv(double r) const;
  std::size_t locate(double r) const;

  ModelManifold m_;
  CurvatureProfile p_;
  RadialTestFunction f_;
  double a_;
  double b1_ = 0.0;
  double f_scale_ = 1.0;
  double boundary_flux_error_ = 0.0;
  double normalization_error_ = 0.0;
  // Node data for quintic dense output of I and u.
  std::vector<double> t_, i_, id_, idd_, u_, ud_, udd_;
};

// The manifold must extend past a (and past a + r for later transport).
// Throws NumericalFailure if the boundary flux misses 1 by more than
// flux_tol.
NeumannSolution solve_neumann_radial(const ModelManifold& m, const CurvatureProfile& p, double a,
                                     const RadialTestFunction& f, double flux_tol = 1e-6);

struct HessianBoundReport {
  double worst_slack = 0.0;  // min of f^{1/(n-1)} - 2(n-1)b1/n - Delta u / n over {|u'| < 1}
  double location = 0.0;
};

HessianBoundReport hessian_bound_check(const NeumannSolution& sol, int samples = 512);

struct TransportOptions {
  int source_samples = 1024;
  int competitor_samples = 800;
  double epsilon_fraction = 1e-3;  // sources start at epsilon_fraction * a
};

// State of the radial transport x -> exp_x(r Du(x)).
struct TransportState {
  double transport_time = 0.0;  // r
  double epsilon = 0.0;
  std::vector<double> s;        // source radii with 0 < u'(s) < 1
  std::vector<double> u_prime, u_second;
  std::vector<double> rho;      // image radii s + r u'(s)
  std::vector<char> contact;    // membership in the contact set
  std::vector<double> jacobian; // det D Phi_r at contact samples (NaN elsewhere)
  int conjugate_count = 0;      // geodesics whose radial factor degenerated
};

// Builds image radii, contact flags (the defining inequality is minimized
// over a refined competitor grid), and transport Jacobians
// (d rho/d s) (phi(rho)/phi(s))^{n-1}. Throws std::invalid_argument when the
// solution transports inward (u' < 0) or the manifold is too small.
TransportState transport_radial(const NeumannSolution& sol, double r,
                                const TransportOptions& opt = {});

// Target radii in (a, r - a) not covered (within one image-grid cell) by the
// contact image; empty means the covering holds on the grid.
std::vector<double> covering_check(const TransportState& ts, double a, double r,
                                   const std::vector<double>& targets);

struct JacobianBoundReport {
  double worst_slack = 0.0;  // min over (s, t) of (bound - det)/max(1, bound)
  double worst_s = 0.0, worst_t = 0.0;
  double annulus_volume = 0.0;   // |{a < d(o, q) < r - a}|
  double transport_mass = 0.0;   // int_{contact} det D Phi_r dvol
  double bound_mass = 0.0;       // same with det replaced by its bound
  int conjugate_geodesics = 0;
};

// Checks det D Phi_t <= (1 + t u''(s)) psi^{n-1}(t) along every contact
// geodesic, psi = psi2 + g0 psi1 against ScaledProfile(u'(s), s) with
// g0 = u'(s) phi'(s)/phi(s), and accumulates the mass chain
// annulus volume <= transport mass <= bound mass.
JacobianBoundReport jacobian_bound_check(const TransportState& ts, const CurvatureProfile& p,
                                         const NeumannSolution& sol, int time_samples = 65,
                                         double ode_tol = 1e-10);

}  // namespace geodecay
