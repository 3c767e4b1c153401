#pragma once

#include <functional>
#include <vector>

namespace geodecay {

// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
// Panels are bisected until the local error estimate drops below
// max(abs_tol scaled by panel width, rel_tol * |panel integral|).
// Throws NumericalFailure if the refinement depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14);

// Same, but the interval is pre-split at the given kink locations so the
// integrand only needs to be smooth between consecutive kinks.
double integrate_with_kinks(const std::function<double(double)>& f, double a, double b,
                            const std::vector<double>& kinks, double rel_tol = 1e-10,
                            double abs_tol = 1e-14);

}  // namespace geodecay
