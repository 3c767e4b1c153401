#include "geodecay/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodecay/rk45.hpp"

namespace geodecay {

OdeCoefficient coefficient_of(const CurvatureProfile& p) {
  return {[p](double t) { return p(t); }, p.kinks()};
}

OdeCoefficient coefficient_of(const ScaledProfile& p) {
  return {[p](double t) { return p(t); }, p.kinks()};
}

OdeCoefficient shifted_coefficient(const CurvatureProfile& p, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("shifted_coefficient: r must be >= 0");
  std::vector<double> ks;
  if (r > 0.0) ks.push_back(r);
  for (double k : p.kinks()) {
    ks.push_back(r + k);
    if (r - k > 0.0) ks.push_back(r - k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return {[p, r](double t) { return p(std::abs(t - r)); }, std::move(ks)};
}

const char* to_string(OdeRole role) {
  switch (role) {
    case OdeRole::h1: return "h1";
    case OdeRole::h2: return "h2";
    case OdeRole::psi1: return "psi1";
    case OdeRole::psi2: return "psi2";
    case OdeRole::shifted_f: return "shifted_f";
    case OdeRole::generic: return "generic";
  }
  return "?";
}

std::size_t OdeSolution::locate(double t) const {
  if (t < 0.0 || t > t_.back() * (1.0 + 1e-12) + 1e-300)
    throw std::out_of_range("OdeSolution: t = " + std::to_string(t) + " outside [0, " +
                            std::to_string(t_.back()) + "]");
  t = std::min(t, t_.back());
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = (it == t_.begin()) ? 0 : (it - t_.begin() - 1);
  if (i + 1 >= t_.size()) i = t_.size() - 2;
  while (t_[i + 1] <= t_[i]) ++i;  // skip duplicate nodes at kink restarts
  return i;
}

double OdeSolution::value(double t) const {
  const std::size_t i = locate(t);
  const double h = t_[i + 1] - t_[i];
  return detail::Quintic::value((t - t_[i]) / h, h, v_[i], d_[i], s_[i], v_[i + 1], d_[i + 1],
                                s_[i + 1]);
}

double OdeSolution::deriv(double t) const {
  const std::size_t i = locate(t);
  const double h = t_[i + 1] - t_[i];
  return detail::Quintic::deriv((t - t_[i]) / h, h, v_[i], d_[i], s_[i], v_[i + 1], d_[i + 1],
                                s_[i + 1]);
}

double OdeSolution::second(double t) const {
  const std::size_t i = locate(t);
  const double h = t_[i + 1] - t_[i];
  return detail::Quintic::second((t - t_[i]) / h, h, v_[i], d_[i], s_[i], v_[i + 1], d_[i + 1],
                                 s_[i + 1]);
}

OdeSolution solve_linear_second_order(const OdeCoefficient& coeff, double v0, double d0, double T,
                                      double tol, OdeRole role) {
  if (!(T > 0.0)) throw std::invalid_argument("solve_linear_second_order: T must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_linear_second_order: tol must be > 0");

  std::vector<double> cuts{0.0};
  for (double k : coeff.kinks) {
    if (k > 0.0 && k < T) cuts.push_back(k);
  }
  cuts.push_back(T);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  OdeSolution sol;
  sol.role_ = role;
  detail::RkOptions opt;
  opt.rtol = tol;
  opt.atol = tol;

  std::vector<double> y{v0, d0};
  auto rhs = [&coeff](double t, const std::vector<double>& u, std::vector<double>& du) {
    du[0] = u[1];
    du[1] = coeff.fn(t) * u[0];
  };
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    detail::rk45(rhs, cuts[seg], cuts[seg + 1], y,
                 opt, [&](double t, const std::vector<double>& u, const std::vector<double>& du) {
                   sol.t_.push_back(t);
                   sol.v_.push_back(u[0]);
                   sol.d_.push_back(u[1]);
                   sol.s_.push_back(du[1]);
                   y = u;
                 });
  }
  return sol;
}

OdeSolution solve_h1(const CurvatureProfile& p, double T, double tol) {
  return solve_linear_second_order(coefficient_of(p), 0.0, 1.0, T, tol, OdeRole::h1);
}

OdeSolution solve_h2(const CurvatureProfile& p, double T, double tol) {
  return solve_linear_second_order(coefficient_of(p), 1.0, 0.0, T, tol, OdeRole::h2);
}

OdeSolution solve_shifted(const CurvatureProfile& p, double r, double T, double tol) {
  if (!(r >= 0.0) || !(r <= T)) throw std::invalid_argument("solve_shifted: need 0 <= r <= T");
  return solve_linear_second_order(shifted_coefficient(p, r), 0.0, 1.0, T, tol,
                                   OdeRole::shifted_f);
}

OdeSolution solve_psi1(const ScaledProfile& p, double T, double tol) {
  return solve_linear_second_order(coefficient_of(p), 0.0, 1.0, T, tol, OdeRole::psi1);
}

OdeSolution solve_psi2(const ScaledProfile& p, double T, double tol) {
  return solve_linear_second_order(coefficient_of(p), 1.0, 0.0, T, tol, OdeRole::psi2);
}

double wronskian(const OdeSolution& a, const OdeSolution& b, double t) {
  return a.value(t) * b.deriv(t) - a.deriv(t) * b.value(t);
}

}  // namespace geodecay
