#include "geodecay/model_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "geodecay/common.hpp"
#include "geodecay/quadrature.hpp"
#include "geodecay/rk45.hpp"

namespace geodecay {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

const char* ModelManifold::warp_kind_name() const {
  switch (kind_) {
    case WarpKind::euclidean: return "euclidean";
    case WarpKind::comparison: return "comparison";
    case WarpKind::tabulated: return "tabulated";
  }
  return "?";
}

ModelManifold ModelManifold::euclidean(int n) {
  if (n < 2) throw std::invalid_argument("ModelManifold: dimension must be >= 2");
  ModelManifold m(n, WarpKind::euclidean);
  m.extent_ = kInf;
  return m;
}

ModelManifold ModelManifold::comparison(int n, const CurvatureProfile& p, double radial_extent,
                                        double ode_tol) {
  if (n < 2) throw std::invalid_argument("ModelManifold: dimension must be >= 2");
  if (!(radial_extent > 0.0))
    throw std::invalid_argument("ModelManifold: radial extent must be > 0");
  ModelManifold m(n, WarpKind::comparison);
  m.h1_ = std::make_shared<OdeSolution>(solve_h1(p, radial_extent, ode_tol));
  m.cp_ = std::make_shared<CurvatureProfile>(p);
  m.extent_ = radial_extent;
  m.check_origin();
  return m;
}

ModelManifold ModelManifold::tabulated(int n, std::vector<double> r, std::vector<double> phi) {
  if (n < 2) throw std::invalid_argument("ModelManifold: dimension must be >= 2");
  if (r.size() != phi.size() || r.size() < 6)
    throw std::invalid_argument("ModelManifold: tabulated warp needs >= 6 matching rows");
  if (r.front() != 0.0) throw std::invalid_argument("ModelManifold: warp table must start at r=0");
  const double h = r[1] - r[0];
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double step = r[i + 1] - r[i];
    if (!(step > 0.0) || std::abs(step - h) > 1e-9 * h)
      throw std::invalid_argument("ModelManifold: warp table must be uniformly spaced");
  }
  ModelManifold m(n, WarpKind::tabulated);
  const std::size_t N = r.size();
  m.tphid_.resize(N);
  m.tphidd_.resize(N);
  auto v = [&](std::size_t i) { return phi[i]; };
  for (std::size_t i = 0; i < N; ++i) {
    // 5-point 4th-order stencils; one-sided at the edges.
    if (i >= 2 && i + 2 < N) {
      m.tphid_[i] = (v(i - 2) - 8 * v(i - 1) + 8 * v(i + 1) - v(i + 2)) / (12 * h);
      m.tphidd_[i] =
          (-v(i - 2) + 16 * v(i - 1) - 30 * v(i) + 16 * v(i + 1) - v(i + 2)) / (12 * h * h);
    } else if (i < 2) {
      m.tphid_[i] = (-25 * v(i) + 48 * v(i + 1) - 36 * v(i + 2) + 16 * v(i + 3) - 3 * v(i + 4)) /
                    (12 * h);
      m.tphidd_[i] = (45 * v(i) - 154 * v(i + 1) + 214 * v(i + 2) - 156 * v(i + 3) +
                      61 * v(i + 4) - 10 * v(i + 5)) /
                     (12 * h * h);
    } else {
      m.tphid_[i] = (25 * v(i) - 48 * v(i - 1) + 36 * v(i - 2) - 16 * v(i - 3) + 3 * v(i - 4)) /
                    (12 * h);
      m.tphidd_[i] = (45 * v(i) - 154 * v(i - 1) + 214 * v(i - 2) - 156 * v(i - 3) +
                      61 * v(i - 4) - 10 * v(i - 5)) /
                     (12 * h * h);
    }
  }
  m.tr_ = std::move(r);
  m.tphi_ = std::move(phi);
  m.extent_ = m.tr_.back();
  m.check_origin();
  return m;
}

ModelManifold ModelManifold::load_warp(int n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open warp file: " + path);
  std::vector<double> rs, phis;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double r, p;
    if (ls >> r >> p) {
      rs.push_back(r);
      phis.push_back(p);
    }
  }
  return tabulated(n, std::move(rs), std::move(phis));
}

void ModelManifold::check_origin() const {
  if (std::abs(warp(0.0)) > 1e-10)
    throw std::invalid_argument("ModelManifold: warp(0) must vanish");
  if (std::abs(warp_deriv(0.0) - 1.0) > 1e-10)
    throw std::invalid_argument("ModelManifold: warp'(0) must equal 1");
  // No conjugate radius inside the working domain.
  for (double r : geometric_grid(1e-6 * extent_, extent_, 128)) {
    if (!(warp(r) > 0.0))
      throw std::invalid_argument("ModelManifold: warp must stay positive on (0, R], fails at r=" +
                                  std::to_string(r));
  }
}

double ModelManifold::warp(double r) const {
  switch (kind_) {
    case WarpKind::euclidean:
      return r;
    case WarpKind::comparison:
      return h1_->value(r);
    case WarpKind::tabulated: {
      const auto it = std::upper_bound(tr_.begin(), tr_.end(), r);
      std::size_t i = (it == tr_.begin()) ? 0 : (it - tr_.begin() - 1);
      if (i + 1 >= tr_.size()) i = tr_.size() - 2;
      const double h = tr_[i + 1] - tr_[i];
      return detail::Quintic::value((r - tr_[i]) / h, h, tphi_[i], tphid_[i], tphidd_[i],
                                    tphi_[i + 1], tphid_[i + 1], tphidd_[i + 1]);
    }
  }
  return 0.0;
}

double ModelManifold::warp_deriv(double r) const {
  switch (kind_) {
    case WarpKind::euclidean:
      return 1.0;
    case WarpKind::comparison:
      return h1_->deriv(r);
    case WarpKind::tabulated: {
      const auto it = std::upper_bound(tr_.begin(), tr_.end(), r);
      std::size_t i = (it == tr_.begin()) ? 0 : (it - tr_.begin() - 1);
      if (i + 1 >= tr_.size()) i = tr_.size() - 2;
      const double h = tr_[i + 1] - tr_[i];
      return detail::Quintic::deriv((r - tr_[i]) / h, h, tphi_[i], tphid_[i], tphidd_[i],
                                    tphi_[i + 1], tphid_[i + 1], tphidd_[i + 1]);
    }
  }
  return 0.0;
}

double ModelManifold::warp_second(double r) const {
  switch (kind_) {
    case WarpKind::euclidean:
      return 0.0;
    case WarpKind::comparison:
      return (*cp_)(r)*h1_->value(r);  // phi'' = lambda phi along the comparison warp
    case WarpKind::tabulated: {
      const auto it = std::upper_bound(tr_.begin(), tr_.end(), r);
      std::size_t i = (it == tr_.begin()) ? 0 : (it - tr_.begin() - 1);
      if (i + 1 >= tr_.size()) i = tr_.size() - 2;
      const double h = tr_[i + 1] - tr_[i];
      return detail::Quintic::second((r - tr_[i]) / h, h, tphi_[i], tphid_[i], tphidd_[i],
                                     tphi_[i + 1], tphid_[i + 1], tphidd_[i + 1]);
    }
  }
  return 0.0;
}

double ModelManifold::radial_curvature(double r) const {
  switch (kind_) {
    case WarpKind::euclidean:
      return 0.0;
    case WarpKind::comparison:
      return (*cp_)(r);  // h1''/h1 = lambda by construction, regular at 0
    case WarpKind::tabulated: {
      const double floor = 0.5 * (tr_[1] - tr_[0]);
      const double x = std::max(r, floor);
      return warp_second(x) / warp(x);
    }
  }
  return 0.0;
}

std::vector<double> ModelManifold::warp_kinks() const {
  switch (kind_) {
    case WarpKind::euclidean:
      return {};
    case WarpKind::comparison:
      return cp_->kinks();
    case WarpKind::tabulated:
      return std::vector<double>(tr_.begin() + 1, tr_.end());
  }
  return {};
}

RicciDecayReport ricci_decay_check(const ModelManifold& m, const CurvatureProfile& p, double R,
                                   int grid_points) {
  if (!(R > 0.0) || R > m.radial_extent() * (1.0 + 1e-12))
    throw std::invalid_argument("ricci_decay_check: R outside the working domain");
  RicciDecayReport rep;
  rep.radial_margin = kInf;
  rep.spherical_margin = kInf;
  rep.first_violation_r = kNan;
  rep.radial_ok = true;
  rep.spherical_ok = true;

  for (double r : geometric_grid(1e-4 * R, R, grid_points)) {
    const double phi = m.warp(r);
    const double lam = p(r);
    const double radial = lam * phi - m.warp_second(r);
    if (radial < rep.radial_margin) rep.radial_margin = radial;
    if (radial < -1e-10 * std::max(1.0, std::abs(lam * phi)) && rep.radial_ok) {
      rep.radial_ok = false;
      rep.first_violation_r = r;
    }
  }
  // The spherical family is noisy for r << 1 because 1 - phi'^2 cancels;
  // start the sweep at a radius where the quotient is well conditioned.
  for (double r : geometric_grid(1e-2 * R, R, grid_points)) {
    const double phi = m.warp(r);
    const double dphi = m.warp_deriv(r);
    const double spherical = (1.0 - dphi * dphi) / (phi * phi) + p(r);
    if (spherical < rep.spherical_margin) rep.spherical_margin = spherical;
    if (spherical < -1e-8 * std::max(1.0, p(r))) rep.spherical_ok = false;
  }
  return rep;
}

double ball_volume(const ModelManifold& m, double r, double rel_tol) {
  if (!(r >= 0.0) || r > m.radial_extent() * (1.0 + 1e-12))
    throw std::invalid_argument("ball_volume: radius outside the working domain");
  if (r == 0.0) return 0.0;
  const int n = m.dimension();
  const double integral = integrate(
      [&m, n](double t) { return std::pow(m.warp(t), n - 1); }, 0.0, r, rel_tol, 1e-300);
  return n * unit_ball_volume(n) * integral;
}

double sphere_area(const ModelManifold& m, double r) {
  if (!(r > 0.0) || r > m.radial_extent() * (1.0 + 1e-12))
    throw std::invalid_argument("sphere_area: radius outside the working domain");
  const int n = m.dimension();
  return n * unit_ball_volume(n) * std::pow(m.warp(r), n - 1);
}

BishopGromovResult bishop_gromov_ratio(const ModelManifold& m, const CurvatureProfile& p,
                                       const std::vector<double>& radii, double ode_tol,
                                       double quad_rel_tol) {
  if (radii.size() < 2) throw std::invalid_argument("bishop_gromov_ratio: need >= 2 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i + 1] > radii[i]))
      throw std::invalid_argument("bishop_gromov_ratio: radii must increase");
  const double R = radii.back();
  const RicciDecayReport rd = ricci_decay_check(m, p, R);
  if (!rd.passed())
    throw std::invalid_argument(
        "bishop_gromov_ratio: the manifold violates the decay condition at r = " +
        std::to_string(rd.first_violation_r));

  const int n = m.dimension();
  const OdeSolution h1 = solve_h1(p, R, ode_tol);

  BishopGromovResult out;
  out.radii = radii;
  out.ratio.resize(radii.size());
  double vol = 0.0, cmp = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    vol += integrate([&m, n](double t) { return std::pow(m.warp(t), n - 1); }, prev, radii[i],
                     quad_rel_tol, 1e-300);
    cmp += integrate([&h1, n](double t) { return std::pow(h1.value(t), n - 1); }, prev, radii[i],
                     quad_rel_tol, 1e-300);
    out.ratio[i] = vol / cmp;
    prev = radii[i];
  }

  AvrEstimate& avr = out.avr;
  avr.theta = out.ratio.back();
  avr.horizon = R;
  for (std::size_t i = 0; i + 1 < out.ratio.size(); ++i)
    avr.monotone_violation = std::max(avr.monotone_violation, out.ratio[i + 1] - out.ratio[i]);
  const double decade = R / 10.0;
  const auto it = std::lower_bound(radii.begin(), radii.end(), decade);
  if (it != radii.end()) {
    avr.last_decade_drift = out.ratio[it - radii.begin()] - out.ratio.back();
  }
  return out;
}

}  // namespace geodecay
