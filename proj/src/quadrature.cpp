#include "geodecay/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "geodecay/common.hpp"

namespace geodecay {
namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1] (positive half).
constexpr double kXk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule (nodes kXk[1], kXk[3], kXk[5], kXk[7]).
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double integral;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double result_k = kWk[7] * fc;
  double result_g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXk[i];
    const double fsum = f(c - x) + f(c + x);
    result_k += kWk[i] * fsum;
    if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
  }
  const double integral = result_k * h;
  const double error = std::abs((result_k - result_g) * h);
  return {integral, error};
}

double adapt(const std::function<double(double)>& f, double a, double b, double rel_tol,
             double abs_tol, int depth) {
  const Panel p = gk15(f, a, b);
  const double limit = std::max(abs_tol, rel_tol * std::abs(p.integral));
  // Floor at rounding level of the panel itself; splitting further is futile.
  if (p.error <= limit || p.error <= 50.0 * 2.22e-16 * std::abs(p.integral)) return p.integral;
  if (depth >= 52) {
    throw NumericalFailure("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "], error " + std::to_string(p.error));
  }
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, rel_tol, 0.5 * abs_tol, depth + 1) +
         adapt(f, c, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, rel_tol, abs_tol);
  return adapt(f, a, b, rel_tol, abs_tol, 0);
}

double integrate_with_kinks(const std::function<double(double)>& f, double a, double b,
                            const std::vector<double>& kinks, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double k : kinks) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) {
      total += integrate(f, cuts[i], cuts[i + 1], rel_tol, abs_tol / double(cuts.size()));
    }
  }
  return total;
}

}  // namespace geodecay
