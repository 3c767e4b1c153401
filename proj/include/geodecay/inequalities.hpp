#pragma once

#include <string>
#include <vector>

#include "geodecay/model_manifold.hpp"
#include "geodecay/profiles.hpp"
#include "geodecay/report.hpp"

namespace geodecay {

// Scalar data entering the Sobolev constants.
struct InequalityParams {
  int n = 2;        // intrinsic dimension
  int p = 2;        // codimension (submanifold constant only)
  double theta = 1.0;
  double B = 0.0;
  double b1 = 0.0;
  double r0 = 0.0;  // max distance of the domain/submanifold from the base point
};

// n * (|B^n| theta / (((1+sqrt(1+4B))/2) (2 e^{r0 b1} - 1)^{n-1}))^{1/n}.
double sobolev_constant_domain(const InequalityParams& q);

// n * (2 b1 (n+p) |B^{n+p}| theta /
//      ((e^{2 b1}-1) p |B^p| (2 e^{r0 b1}-1)^{n+p-1} (1+sqrt(1+4B))/2))^{1/n};
// the degenerate factor 2 b1/(e^{2 b1}-1) is evaluated by series when
// b1 < 1e-12. Requires p >= 2.
double sobolev_constant_submanifold(const InequalityParams& q);

// Positive smooth radial test functions.
class RadialTestFunction {
 public:
  enum class Kind { constant, affine, bump };

  static RadialTestFunction constant(double c);
  // a - b r, clipped at zero (the clip must stay outside the domain in use).
  static RadialTestFunction affine(double a, double b);
  // amplitude * exp(-(r/width)^2).
  static RadialTestFunction bump(double amplitude, double width);

  double value(double r) const;
  double deriv(double r) const;
  double second(double r) const;
  double min_on(double R) const;

  // Same shape with values multiplied by s.
  RadialTestFunction scaled(double s) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  std::string describe() const;

 private:
  RadialTestFunction(Kind k, std::vector<double> p) : kind_(k), params_(std::move(p)) {}
  Kind kind_;
  std::vector<double> params_;
};

struct DomainCheckOptions {
  double bg_horizon = 1000.0;  // radius out to which theta is estimated
  int bg_points = 160;
  double ode_tol = 1e-12;
  double quad_rel = 1e-11;
  double slack_tol = 1e-8;     // margins must stay above -slack_tol * scale(LHS)
};

// Corollary-style isoperimetric check on the geodesic ball of the given
// radius: |boundary| >= (C - 2(n-1) b1 |ball|^{1/n}) |ball|^{(n-1)/n} with
// theta taken from the Bishop-Gromov ratio of (m, p).
VerificationReport isoperimetric_check(const ModelManifold& m, const CurvatureProfile& p,
                                       double ball_radius, const DomainCheckOptions& opt = {});

// Full Sobolev check on the ball with a radial test function f:
// f(r0)|boundary| + int |f'| dvol + 2(n-1) b1 int f dvol
//   >= C (int f^{n/(n-1)} dvol)^{(n-1)/n}.
VerificationReport sobolev_check_domain(const ModelManifold& m, const CurvatureProfile& p,
                                        double ball_radius, const RadialTestFunction& f,
                                        const DomainCheckOptions& opt = {});

// Unit-scale test submanifolds in flat ambient space R^{n+p}.
struct SubmanifoldSpec {
  enum class Kind { flat_disk, round_sphere };
  Kind kind = Kind::flat_disk;
  int n = 2;
  int p = 2;
};

// Flat-ambient submanifold check with a constant test function: the flat
// disk has H = 0 and boundary S^{n-1}; the round sphere has |H| = n and no
// boundary. Ambient flatness pins theta = 1, B = b1 = 0, r0 = 1.
VerificationReport submanifold_check_flat(const SubmanifoldSpec& s, double f_const,
                                          double slack_tol = 1e-8);

}  // namespace geodecay
