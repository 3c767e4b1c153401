#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "geodecay/common.hpp"

namespace geodecay::detail {

struct RkOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
};

// Dormand-Prince 5(4) with FSAL and standard PI-free step control.
// observer(t, y, dy) fires at t0 and after every accepted step; dy is the
// derivative at t, so callers can build C^2 dense output (y'' comes from the
// right-hand side itself).
// Throws NumericalFailure when the step size underflows.
template <class Rhs, class Observer>
void rk45(Rhs&& rhs, double t0, double t1, std::vector<double> y, const RkOptions& opt,
          Observer&& observe) {
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n);

  rhs(t0, y, k1);
  for (double v : k1)
    if (!std::isfinite(v))
      throw NumericalFailure("ODE right-hand side not finite at t = " + std::to_string(t0));
  observe(t0, y, k1);
  if (t1 <= t0) return;

  // Crude but serviceable initial step from the scale of y and y'.
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = opt.atol + opt.rtol * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (k1[i] / sc) * (k1[i] / sc);
  }
  double h = (d1 > 0.0) ? 0.01 * std::sqrt(d0 / d1) : 1e-3 * (t1 - t0);
  h = std::min({h, t1 - t0, opt.max_step});
  if (!(h > 0.0)) h = 1e-6 * (t1 - t0);

  double t = t0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw NumericalFailure("ODE step size underflow at t = " + std::to_string(t));

    auto stage = [&](double c, std::vector<double>& k, auto&&... aks) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = y[i];
        ((acc += h * aks.first * (*aks.second)[i]), ...);
        yt[i] = acc;
      }
      rhs(t + c * h, yt, k);
    };
    using P = std::pair<double, const std::vector<double>*>;
    stage(1.0 / 5, k2, P{1.0 / 5, &k1});
    stage(3.0 / 10, k3, P{3.0 / 40, &k1}, P{9.0 / 40, &k2});
    stage(4.0 / 5, k4, P{44.0 / 45, &k1}, P{-56.0 / 15, &k2}, P{32.0 / 9, &k3});
    stage(8.0 / 9, k5, P{19372.0 / 6561, &k1}, P{-25360.0 / 2187, &k2}, P{64448.0 / 6561, &k3},
          P{-212.0 / 729, &k4});
    stage(1.0, k6, P{9017.0 / 3168, &k1}, P{-355.0 / 33, &k2}, P{46732.0 / 5247, &k3},
          P{49.0 / 176, &k4}, P{-5103.0 / 18656, &k5});

    for (std::size_t i = 0; i < n; ++i) {
      y5[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] + 125.0 / 192 * k4[i] -
                          2187.0 / 6784 * k5[i] + 11.0 / 84 * k6[i]);
    }
    rhs(t + h, y5, k7);

    double err_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (71.0 / 57600 * k1[i] - 71.0 / 16695 * k3[i] + 71.0 / 1920 * k4[i] -
                            17253.0 / 339200 * k5[i] + 22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err_sq += (e / sc) * (e / sc);
    }
    double err = std::sqrt(err_sq / n);
    if (!std::isfinite(err)) err = 1e10;  // reject hard and shrink

    if (err <= 1.0) {
      t += h;
      // snap onto the segment end once within rounding distance, otherwise
      // the leftover sliver would trip the underflow guard
      if (t1 - t <= 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t1)))
        t = t1;
      y.swap(y5);
      k1.swap(k7);
      observe(t, y, k1);
      const double fac = (err < 1e-10) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.max_step);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
}

// Two-point quintic Hermite basis: value/derivative/second derivative at both
// ends of a step reproduce polynomials of degree <= 5.
struct Quintic {
  // theta in [0, 1], h = interval width.
  static double value(double theta, double h, double y0, double d0, double s0, double y1,
                      double d1, double s1) {
    const double t = theta, t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double a0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double a1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double a2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double b0 = 10 * t3 - 15 * t4 + 6 * t5;
    const double b1 = -4 * t3 + 7 * t4 - 3 * t5;
    const double b2 = 0.5 * (t3 - 2 * t4 + t5);
    return y0 * a0 + h * d0 * a1 + h * h * s0 * a2 + y1 * b0 + h * d1 * b1 + h * h * s1 * b2;
  }

  static double deriv(double theta, double h, double y0, double d0, double s0, double y1,
                      double d1, double s1) {
    const double t = theta, t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double a0 = -30 * t2 + 60 * t3 - 30 * t4;
    const double a1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
    const double a2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
    const double b0 = 30 * t2 - 60 * t3 + 30 * t4;
    const double b1 = -12 * t2 + 28 * t3 - 15 * t4;
    const double b2 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
    return (y0 * a0 + h * d0 * a1 + h * h * s0 * a2 + y1 * b0 + h * d1 * b1 + h * h * s1 * b2) / h;
  }

  static double second(double theta, double h, double y0, double d0, double s0, double y1,
                       double d1, double s1) {
    const double t = theta, t2 = t * t, t3 = t2 * t;
    const double a0 = -60 * t + 180 * t2 - 120 * t3;
    const double a1 = -36 * t + 96 * t2 - 60 * t3;
    const double a2 = 0.5 * (2 - 18 * t + 36 * t2 - 20 * t3);
    const double b0 = 60 * t - 180 * t2 + 120 * t3;
    const double b1 = -24 * t + 84 * t2 - 60 * t3;
    const double b2 = 0.5 * (6 * t - 24 * t2 + 20 * t3);
    return (y0 * a0 + h * d0 * a1 + h * h * s0 * a2 + y1 * b0 + h * d1 * b1 + h * h * s1 * b2) /
           (h * h);
  }
};

}  // namespace geodecay::detail
