#pragma once

#include <functional>
#include <vector>

#include "geodecay/profiles.hpp"

namespace geodecay {

// Coefficient c(t) of the scalar comparison equation v'' = c(t) v, together
// with the points where c is merely continuous.
struct OdeCoefficient {
  std::function<double(double)> fn;
  std::vector<double> kinks;

  double operator()(double t) const { return fn(t); }
};

OdeCoefficient coefficient_of(const CurvatureProfile& p);
OdeCoefficient coefficient_of(const ScaledProfile& p);
// c(t) = lambda(|t - r|), kink at t = r.
OdeCoefficient shifted_coefficient(const CurvatureProfile& p, double r);

enum class OdeRole { h1, h2, psi1, psi2, shifted_f, generic };

const char* to_string(OdeRole role);

// Dense-output solution of v'' = c(t) v on [0, T]. Nodes are the accepted
// integrator steps; values between nodes come from two-point quintic Hermite
// interpolation (v, v', v'' = c v at both ends), so dense values carry the
// same order as the solver.
class OdeSolution {
 public:
  double value(double t) const;
  double deriv(double t) const;
  double second(double t) const;

  double horizon() const { return t_.back(); }
  OdeRole role() const { return role_; }

  const std::vector<double>& grid() const { return t_; }
  const std::vector<double>& values() const { return v_; }
  const std::vector<double>& derivs() const { return d_; }

 private:
  friend OdeSolution solve_linear_second_order(const OdeCoefficient&, double, double, double,
                                               double, OdeRole);
  std::size_t locate(double t) const;
  OdeRole role_ = OdeRole::generic;
  std::vector<double> t_, v_, d_, s_;
};

// Integrates v'' = c(t) v with v(0) = v0, v'(0) = d0 up to T at the given
// local tolerance, restarting at every declared kink of the coefficient.
OdeSolution solve_linear_second_order(const OdeCoefficient& coeff, double v0, double d0, double T,
                                      double tol, OdeRole role = OdeRole::generic);

OdeSolution solve_h1(const CurvatureProfile& p, double T, double tol = 1e-10);
OdeSolution solve_h2(const CurvatureProfile& p, double T, double tol = 1e-10);
// f'' = lambda(|t - r|) f, f(0) = 0, f'(0) = 1.
OdeSolution solve_shifted(const CurvatureProfile& p, double r, double T, double tol = 1e-10);
OdeSolution solve_psi1(const ScaledProfile& p, double T, double tol = 1e-10);
OdeSolution solve_psi2(const ScaledProfile& p, double T, double tol = 1e-10);

// a(t) b'(t) - a'(t) b(t); equals -1 for the (h1, h2) pair at every t.
double wronskian(const OdeSolution& a, const OdeSolution& b, double t);

}  // namespace geodecay
