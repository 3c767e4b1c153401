#include "geodecay/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "geodecay/common.hpp"
#include "geodecay/quadrature.hpp"

namespace geodecay {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneRelTol = 1e-12;
}  // namespace

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::zero: return "zero";
    case ProfileKind::rational: return "rational";
    case ProfileKind::euler: return "euler";
    case ProfileKind::linear_bump: return "linear_bump";
    case ProfileKind::piecewise_min: return "piecewise_min";
    case ProfileKind::tabulated: return "tabulated";
  }
  return "?";
}

double CurvatureProfile::operator()(double t) const {
  switch (kind_) {
    case ProfileKind::zero:
      return 0.0;
    case ProfileKind::rational:
      return params_[0] / (1.0 + t * t);
    case ProfileKind::euler:
      return params_[0] / ((1.0 + t) * (1.0 + t));
    case ProfileKind::linear_bump:
      return std::max(0.0, params_[0] - params_[1] * t);
    case ProfileKind::piecewise_min:
      return t <= 1.0 ? params_[0] : params_[0] / (t * t);
    case ProfileKind::tabulated: {
      if (t >= domain_cap_) {
        return tail_coeff_ > 0.0 ? tail_coeff_ / (t * t) : 0.0;
      }
      auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
      const std::size_t hi = std::min<std::size_t>(it - tab_t_.begin(), tab_t_.size() - 1);
      const std::size_t lo = hi == 0 ? 0 : hi - 1;
      if (hi == lo) return tab_v_[lo];
      const double w = (t - tab_t_[lo]) / (tab_t_[hi] - tab_t_[lo]);
      return tab_v_[lo] + w * (tab_v_[hi] - tab_v_[lo]);
    }
  }
  return 0.0;
}

std::vector<double> CurvatureProfile::kinks() const {
  switch (kind_) {
    case ProfileKind::linear_bump:
      if (params_[1] > 0.0 && params_[0] > 0.0) return {params_[0] / params_[1]};
      return {};
    case ProfileKind::piecewise_min:
      return {1.0};
    case ProfileKind::tabulated: {
      std::vector<double> ks(tab_t_.begin() + 1, tab_t_.end());
      return ks;
    }
    default:
      return {};
  }
}

std::string CurvatureProfile::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (!params_.empty()) {
    os << "(";
    for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
    os << ")";
  }
  if (kind_ == ProfileKind::tabulated) os << "[" << tab_t_.size() << " rows]";
  return os.str();
}

CurvatureProfile CurvatureProfile::tabulated_raw(std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size() || t.size() < 2)
    throw std::invalid_argument("tabulated profile: need >= 2 matching (t, value) rows");
  if (t.front() != 0.0) throw std::invalid_argument("tabulated profile: times must start at 0");
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i + 1] > t[i]))
      throw std::invalid_argument("tabulated profile: times must be strictly increasing");
  }
  for (double val : v) {
    if (!std::isfinite(val)) throw std::invalid_argument("tabulated profile: non-finite value");
  }
  CurvatureProfile p;
  p.kind_ = ProfileKind::tabulated;
  p.domain_cap_ = t.back();
  p.tail_coeff_ = std::max(0.0, v.back()) * t.back() * t.back();
  p.tab_t_ = std::move(t);
  p.tab_v_ = std::move(v);
  return p;
}

CurvatureProfile make_profile(ProfileKind kind, const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument(std::string("make_profile: ") + to_string(kind) + " takes " +
                                  std::to_string(n) + " parameter(s)");
  };
  for (double v : params) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("make_profile: parameters must be finite and nonnegative");
  }
  CurvatureProfile p;
  p.kind_ = kind;
  p.params_ = params;
  p.domain_cap_ = kInf;
  switch (kind) {
    case ProfileKind::zero:
      need(0);
      break;
    case ProfileKind::rational:
    case ProfileKind::euler:
    case ProfileKind::piecewise_min:
      need(1);
      break;
    case ProfileKind::linear_bump:
      need(2);
      if (params[0] > 0.0 && params[1] == 0.0)
        throw std::invalid_argument("make_profile: linear_bump with zero slope is not integrable");
      break;
    case ProfileKind::tabulated:
      throw std::invalid_argument("make_profile: use make_tabulated for tabulated profiles");
  }
  return p;
}

CurvatureProfile make_tabulated(std::vector<double> t, std::vector<double> v) {
  CurvatureProfile p = CurvatureProfile::tabulated_raw(std::move(t), std::move(v));
  const auto& vals = p.table_values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 0.0)
      throw std::invalid_argument("make_tabulated: negative value at row " + std::to_string(i));
    if (i > 0 && vals[i] > vals[i - 1] + kMonotoneRelTol * std::max(1.0, std::abs(vals[i - 1])))
      throw std::invalid_argument("make_tabulated: values increase at row " + std::to_string(i));
  }
  return p;
}

CurvatureProfile load_tabulated(std::istream& in) {
  std::vector<double> ts, vs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double t, v;
    if (ls >> t >> v) {
      ts.push_back(t);
      vs.push_back(v);
    }
  }
  return make_tabulated(std::move(ts), std::move(vs));
}

CurvatureProfile load_tabulated_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  return load_tabulated(in);
}

std::vector<ProfileViolation> validate_profile(const CurvatureProfile& p, double grid_step,
                                               double horizon) {
  std::vector<ProfileViolation> out;
  std::vector<double> ts;
  if (p.kind() == ProfileKind::tabulated) {
    ts = p.table_times();
  } else {
    if (!(grid_step > 0.0) || !(horizon > 0.0)) return out;
    for (double t = 0.0; t <= horizon + 0.5 * grid_step; t += grid_step) ts.push_back(t);
  }
  double prev = kInf;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double v = p(ts[i]);
    if (v < -kMonotoneRelTol)
      out.push_back({ProfileViolation::Type::negative, i, ts[i], v});
    if (i > 0 && v > prev + kMonotoneRelTol * std::max(1.0, std::abs(prev)))
      out.push_back({ProfileViolation::Type::increasing, i, ts[i], v});
    prev = v;
  }
  return out;
}

ProfileInvariants profile_invariants(const CurvatureProfile& p, double horizon, TailModel tail) {
  if (!(horizon > 0.0)) throw std::invalid_argument("profile_invariants: horizon must be > 0");
  const auto& q = p.params();
  if (tail == TailModel::exact) {
    switch (p.kind()) {
      case ProfileKind::zero:
        return {0.0, 0.0, 0.0, 0.0};
      case ProfileKind::rational:
        return {q[0], q[0] * M_PI / 2.0, 0.0, 0.0};
      case ProfileKind::euler:
        return {q[0], q[0], 0.0, 0.0};
      case ProfileKind::linear_bump:
        return {0.0, q[1] > 0.0 ? q[0] * q[0] / (2.0 * q[1]) : 0.0, 0.0, 0.0};
      case ProfileKind::piecewise_min:
        return {q[0], 2.0 * q[0], 0.0, 0.0};
      case ProfileKind::tabulated:
        break;  // falls through to the fitted path
    }
  }
  ProfileInvariants inv;
  const double body = integrate_with_kinks([&p](double t) { return p(t); }, 0.0, horizon,
                                           p.kinks(), 1e-12, 1e-15);
  const double tail_c = horizon * horizon * p(horizon);
  inv.tail_estimate_error = tail_c / horizon;
  inv.b1 = body + inv.tail_estimate_error;
  double sup = tail_c;
  for (double t : geometric_grid(horizon / 2.0, horizon, 257)) sup = std::max(sup, t * t * p(t));
  inv.B = sup;
  const double half = (horizon / 2.0) * (horizon / 2.0) * p(horizon / 2.0);
  inv.tail_drift = std::abs(tail_c - half) / std::max(1e-300, std::max(tail_c, half));
  return inv;
}

ScaledProfile::ScaledProfile(CurvatureProfile base, double speed, double center)
    : base_(std::move(base)), speed_(speed), center_(center) {
  if (!(speed >= 0.0) || !(speed <= 1.0))
    throw std::invalid_argument("ScaledProfile: speed must lie in [0, 1]");
  if (!(center >= 0.0)) throw std::invalid_argument("ScaledProfile: center must be >= 0");
}

double ScaledProfile::operator()(double t) const {
  if (speed_ == 0.0) return 0.0;
  return speed_ * speed_ * base_(std::abs(center_ - speed_ * t));
}

std::vector<double> ScaledProfile::kinks() const {
  std::vector<double> out;
  if (speed_ == 0.0) return out;
  if (center_ > 0.0) out.push_back(center_ / speed_);
  for (double k : base_.kinks()) {
    const double a = (center_ + k) / speed_;
    const double b = (center_ - k) / speed_;
    out.push_back(a);
    if (b > 0.0) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScaledProfile scale_profile(const CurvatureProfile& p, double speed, double center) {
  return ScaledProfile(p, speed, center);
}

}  // namespace geodecay
