#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geodecay {

// Curvature-decay profiles: nonnegative, nonincreasing, continuous functions
// lambda(t) on [0, inf) with finite B = limsup t^2 lambda(t) and finite
// b1 = integral of lambda. All built-in kinds are analytic except the
// tabulated one, which is piecewise linear inside its table and continued
// by a C/t^2 tail beyond it.
enum class ProfileKind { zero, rational, euler, linear_bump, piecewise_min, tabulated };

const char* to_string(ProfileKind kind);

class CurvatureProfile {
 public:
  double operator()(double t) const;

  ProfileKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

  // Locations in (0, inf) where the profile is only C^0. ODE integrators
  // restart at these points.
  std::vector<double> kinks() const;

  // Largest abscissa of the table for tabulated profiles; +inf otherwise.
  double domain_cap() const { return domain_cap_; }

  const std::vector<double>& table_times() const { return tab_t_; }
  const std::vector<double>& table_values() const { return tab_v_; }

  std::string describe() const;

  // Raw tabulated construction: requires strictly increasing times starting
  // at 0 but does not enforce monotone values (validate_profile does).
  static CurvatureProfile tabulated_raw(std::vector<double> t, std::vector<double> v);

  friend CurvatureProfile make_profile(ProfileKind kind, const std::vector<double>& params);

 private:
  CurvatureProfile() = default;
  ProfileKind kind_ = ProfileKind::zero;
  std::vector<double> params_;
  std::vector<double> tab_t_, tab_v_;
  double tail_coeff_ = 0.0;  // C in C/t^2 beyond the table
  double domain_cap_ = 0.0;
};

// Builds and validates an analytic profile.
//   zero          []          -> 0
//   rational      [B0]        -> B0 / (1 + t^2)
//   euler         [c]         -> c / (1 + t)^2
//   linear_bump   [a, b]      -> max(0, a - b t), b > 0 unless a == 0
//   piecewise_min [c]         -> min(c, c / t^2)
// Throws std::invalid_argument on bad parameters.
CurvatureProfile make_profile(ProfileKind kind, const std::vector<double>& params);

// Validated tabulated construction: rejects tables that increase anywhere
// beyond the relative tolerance 1e-12.
CurvatureProfile make_tabulated(std::vector<double> t, std::vector<double> v);

// Two-column text (t, lambda), strictly increasing t starting at 0.
CurvatureProfile load_tabulated(std::istream& in);
CurvatureProfile load_tabulated_file(const std::string& path);

struct ProfileViolation {
  enum class Type { negative, increasing };
  Type type;
  std::size_t index;  // grid/table sample index of the offending value
  double t;
  double value;
};

// Diagnoses nonnegativity and monotonicity on a sample grid (for tabulated
// profiles, on the table itself). Never throws; empty result means valid.
std::vector<ProfileViolation> validate_profile(const CurvatureProfile& p, double grid_step,
                                               double horizon);

enum class TailModel { exact, power_law_fit };

struct ProfileInvariants {
  double B = 0.0;
  double b1 = 0.0;
  // Contribution of the fitted C/t^2 tail to b1 (0 on the analytic path).
  double tail_estimate_error = 0.0;
  // Stabilization diagnostic: relative drift of t^2 lambda(t) between
  // horizon/2 and horizon (0 on the analytic path).
  double tail_drift = 0.0;
};

// B and b1. Analytic kinds are evaluated in closed form under
// TailModel::exact; otherwise (and always for tabulated profiles) b1 is
// adaptive quadrature over [0, horizon] plus the fitted C/t^2 tail, and B is
// the sup of t^2 lambda over [horizon/2, horizon] merged with the fit.
ProfileInvariants profile_invariants(const CurvatureProfile& p, double horizon = 1e4,
                                     TailModel tail = TailModel::exact);

// t -> speed^2 * lambda(|center - speed * t|), speed in [0, 1], center >= 0.
class ScaledProfile {
 public:
  ScaledProfile(CurvatureProfile base, double speed, double center);

  double operator()(double t) const;
  double speed() const { return speed_; }
  double center() const { return center_; }
  const CurvatureProfile& base() const { return base_; }

  // Fold point center/speed plus the reflected images of the base kinks.
  std::vector<double> kinks() const;

 private:
  CurvatureProfile base_;
  double speed_;
  double center_;
};

ScaledProfile scale_profile(const CurvatureProfile& p, double speed, double center);

}  // namespace geodecay
