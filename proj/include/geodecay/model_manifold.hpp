#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geodecay/ode.hpp"
#include "geodecay/profiles.hpp"

namespace geodecay {

// Rotationally symmetric model manifold: metric dr^2 + phi(r)^2 g_{S^{n-1}}
// with base point at r = 0, phi(0) = 0, phi'(0) = 1. The two sectional
// curvature families are -phi''/phi (radial) and (1 - phi'^2)/phi^2
// (spherical); radial Ricci is -(n-1) phi''/phi.
class ModelManifold {
 public:
  enum class WarpKind { euclidean, comparison, tabulated };

  static ModelManifold euclidean(int n);
  // phi = h1 of the profile, integrated out to radial_extent.
  static ModelManifold comparison(int n, const CurvatureProfile& p, double radial_extent,
                                  double ode_tol = 1e-12);
  // Uniformly spaced table (r, phi); derivatives by 5-point 4th-order stencils.
  static ModelManifold tabulated(int n, std::vector<double> r, std::vector<double> phi);
  // Two-column text (r, phi).
  static ModelManifold load_warp(int n, const std::string& path);

  int dimension() const { return n_; }
  WarpKind warp_kind() const { return kind_; }
  const char* warp_kind_name() const;
  double radial_extent() const { return extent_; }

  double warp(double r) const;
  double warp_deriv(double r) const;
  double warp_second(double r) const;

  // phi''/phi including its r -> 0 limit (0 for euclidean, lambda(r) exactly
  // for comparison warps). The negative of the radial sectional curvature.
  double radial_curvature(double r) const;

  // Radii where the warp's second derivative is non-smooth (profile kinks
  // for comparison warps, table nodes for tabulated ones).
  std::vector<double> warp_kinks() const;

 private:
  ModelManifold(int n, WarpKind kind) : n_(n), kind_(kind) {}
  void check_origin() const;
  int n_;
  WarpKind kind_;
  double extent_ = 0.0;
  std::shared_ptr<const OdeSolution> h1_;        // comparison warp
  std::shared_ptr<const CurvatureProfile> cp_;   // profile behind the comparison warp
  std::vector<double> tr_, tphi_, tphid_, tphidd_;  // tabulated warp + stencil derivatives
};

struct RicciDecayReport {
  bool radial_ok = false;     // phi'' <= lambda phi, i.e. radial Ricci decay
  bool spherical_ok = false;  // (1 - phi'^2)/phi^2 >= -lambda (sectional variant)
  double radial_margin = 0.0;
  double spherical_margin = 0.0;
  double first_violation_r = 0.0;  // NaN when radial_ok

  bool passed() const { return radial_ok; }
};

// Grid check of the curvature-decay conditions over (0, R].
RicciDecayReport ricci_decay_check(const ModelManifold& m, const CurvatureProfile& p, double R,
                                   int grid_points = 512);

// n |B^n| * integral of phi^{n-1} / value at r; adaptive quadrature.
double ball_volume(const ModelManifold& m, double r, double rel_tol = 1e-10);
double sphere_area(const ModelManifold& m, double r);

struct AvrEstimate {
  double theta = 0.0;
  double horizon = 0.0;
  double monotone_violation = 0.0;  // max per-step increase of the ratio
  double last_decade_drift = 0.0;   // ratio(R/10) - ratio(R)
};

struct BishopGromovResult {
  std::vector<double> radii;
  std::vector<double> ratio;
  AvrEstimate avr;
};

// Volume ratio ball_volume(r) / (n |B^n| int_0^r h1^{n-1}) over the given
// increasing radii. Requires ricci_decay_check(m, p) to pass (throws
// std::invalid_argument otherwise). theta is reported at the last radius.
BishopGromovResult bishop_gromov_ratio(const ModelManifold& m, const CurvatureProfile& p,
                                       const std::vector<double>& radii, double ode_tol = 1e-12,
                                       double quad_rel_tol = 1e-12);

}  // namespace geodecay
