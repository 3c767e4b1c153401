#include "geodecay/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodecay/rk45.hpp"

namespace geodecay {

namespace {

void check_symmetric(const Eigen::MatrixXd& S, double t) {
  const double skew = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-9 * (1.0 + S.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("solve_jacobi_matrix: S(" + std::to_string(t) +
                                ") is not symmetric");
}

}  // namespace

std::size_t JacobiMatrixSolution::locate(double t) const {
  if (t < 0.0 || t > t_.back() * (1.0 + 1e-12) + 1e-300)
    throw std::out_of_range("JacobiMatrixSolution: t outside [0, T]");
  t = std::min(t, t_.back());
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = (it == t_.begin()) ? 0 : (it - t_.begin() - 1);
  if (i + 1 >= t_.size()) i = t_.size() - 2;
  while (t_[i + 1] <= t_[i]) ++i;
  return i;
}

void JacobiMatrixSolution::eval(double t, Eigen::MatrixXd& P, Eigen::MatrixXd& Pprime) const {
  const std::size_t i = locate(t);
  const double h = t_[i + 1] - t_[i];
  const double th = (t - t_[i]) / h;
  P.resize(dim_, dim_);
  Pprime.resize(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      P(r, c) = detail::Quintic::value(th, h, p_[i](r, c), dp_[i](r, c), ddp_[i](r, c),
                                       p_[i + 1](r, c), dp_[i + 1](r, c), ddp_[i + 1](r, c));
      Pprime(r, c) = detail::Quintic::deriv(th, h, p_[i](r, c), dp_[i](r, c), ddp_[i](r, c),
                                            p_[i + 1](r, c), dp_[i + 1](r, c), ddp_[i + 1](r, c));
    }
  }
}

double JacobiMatrixSolution::det_at(double t) const {
  Eigen::MatrixXd P, Pp;
  eval(t, P, Pp);
  return P.determinant();
}

double JacobiMatrixSolution::max_q_asymmetry() const {
  double worst = 0.0;
  for (const auto& Q : q_) worst = std::max(worst, (Q - Q.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

JacobiMatrixSolution solve_jacobi_matrix(const MatrixCoefficient& S, const Eigen::MatrixXd& P0,
                                         const Eigen::MatrixXd& P0p, double T, double tol) {
  const int m = S.dim;
  if (m < 1) throw std::invalid_argument("solve_jacobi_matrix: dimension must be >= 1");
  if (P0.rows() != m || P0.cols() != m || P0p.rows() != m || P0p.cols() != m)
    throw std::invalid_argument("solve_jacobi_matrix: initial data dimension mismatch");
  if (!(T > 0.0)) throw std::invalid_argument("solve_jacobi_matrix: T must be > 0");
  check_symmetric(S.fn(0.0), 0.0);
  check_symmetric(S.fn(0.5 * T), 0.5 * T);

  JacobiMatrixSolution sol;
  sol.dim_ = m;
  sol.S_ = S;

  // State layout: [vec(P); vec(P')] row-major.
  const int n2 = m * m;
  std::vector<double> y(2 * n2);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      y[r * m + c] = P0(r, c);
      y[n2 + r * m + c] = P0p(r, c);
    }

  Eigen::MatrixXd P(m, m), PS(m, m);
  auto rhs = [&](double t, const std::vector<double>& u, std::vector<double>& du) {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) P(r, c) = u[r * m + c];
    PS = -P * S.fn(t);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        du[r * m + c] = u[n2 + r * m + c];
        du[n2 + r * m + c] = PS(r, c);
      }
  };

  std::vector<double> cuts{0.0};
  for (double k : S.kinks)
    if (k > 0.0 && k < T) cuts.push_back(k);
  cuts.push_back(T);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  detail::RkOptions opt;
  opt.rtol = tol;
  opt.atol = tol;
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    detail::rk45(rhs, cuts[seg], cuts[seg + 1], y, opt,
                 [&](double t, const std::vector<double>& u, const std::vector<double>& du) {
                   Eigen::MatrixXd Pm(m, m), Dm(m, m), Am(m, m);
                   for (int r = 0; r < m; ++r)
                     for (int c = 0; c < m; ++c) {
                       Pm(r, c) = u[r * m + c];
                       Dm(r, c) = u[n2 + r * m + c];
                       Am(r, c) = du[n2 + r * m + c];
                     }
                   sol.t_.push_back(t);
                   sol.p_.push_back(std::move(Pm));
                   sol.dp_.push_back(std::move(Dm));
                   sol.ddp_.push_back(std::move(Am));
                   y = u;
                 });
  }

  double max_det = 0.0;
  for (std::size_t i = 0; i < sol.t_.size(); ++i) {
    sol.det_.push_back(sol.p_[i].determinant());
    max_det = std::max(max_det, std::abs(sol.det_.back()));
  }
  sol.floor_ = 1e-10 * max_det;

  // Conjugate-point scan: node values plus a few dense samples per step so a
  // sign change inside a long step is not missed; then bisect.
  double t_bad = -1.0;
  double prev_t = sol.t_.front();
  double prev_det = sol.det_.front();
  for (std::size_t i = 0; i + 1 < sol.t_.size() && t_bad < 0.0; ++i) {
    if (sol.t_[i + 1] <= sol.t_[i]) continue;
    for (int j = 1; j <= 8; ++j) {
      const double t = sol.t_[i] + (sol.t_[i + 1] - sol.t_[i]) * j / 8.0;
      const double d = (j == 8) ? sol.det_[i + 1] : sol.det_at(t);
      if (d <= 0.0) {
        double lo = prev_t, hi = t;
        for (int it = 0; it < 80 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          (sol.det_at(mid) <= 0.0 ? hi : lo) = mid;
        }
        t_bad = hi;
        break;
      }
      prev_t = t;
      prev_det = d;
    }
  }
  (void)prev_det;
  if (t_bad >= 0.0) sol.degenerate_t_ = t_bad;

  for (std::size_t i = 0; i < sol.t_.size(); ++i) {
    if (sol.degenerate_t_ && sol.t_[i] >= *sol.degenerate_t_) break;
    if (std::abs(sol.det_[i]) < sol.floor_) continue;
    if (i > 0 && sol.t_[i] <= sol.t_[i - 1]) continue;  // skip duplicate kink nodes
    sol.q_t_.push_back(sol.t_[i]);
    sol.q_.push_back(sol.p_[i].partialPivLu().solve(sol.dp_[i]));
  }
  return sol;
}

double riccati_residual(const JacobiMatrixSolution& sol) {
  const double T = sol.horizon();
  const int m = sol.dimension();
  double worst = 0.0;
  Eigen::MatrixXd P(m, m), Pp(m, m);

  auto q_at = [&](double t) -> Eigen::MatrixXd {
    sol.eval(t, P, Pp);
    return P.partialPivLu().solve(Pp);
  };

  // Q' by a 7-point 6th-order stencil. Truncation error grows with delta
  // while dense-output noise shrinks with it, so each sample takes the best
  // certificate over a small ladder of deltas.
  const double deltas[3] = {std::min(0.005, T / 40.0), std::min(0.02, T / 20.0),
                            std::min(0.08, T / 8.0)};
  static constexpr double w[3] = {45.0, -9.0, 1.0};

  for (std::size_t i = 0; i < sol.q_times().size(); ++i) {
    const double t = sol.q_times()[i];
    const Eigen::MatrixXd& Q = sol.Q_samples()[i];
    const Eigen::MatrixXd tail = Q * Q + sol.S_at(t);

    double best = std::numeric_limits<double>::infinity();
    for (double delta : deltas) {
      if (t - 3.0 * delta < 0.0 || t + 3.0 * delta > T) continue;
      if (std::abs(sol.det_at(t - 3.0 * delta)) < sol.conditioning_floor() ||
          std::abs(sol.det_at(t + 3.0 * delta)) < sol.conditioning_floor())
        continue;
      Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(m, m);
      for (int k = 1; k <= 3; ++k)
        dq += w[k - 1] * (q_at(t + k * delta) - q_at(t - k * delta));
      dq /= 60.0 * delta;
      best = std::min(best, (dq + tail).cwiseAbs().maxCoeff());
    }
    if (std::isfinite(best)) worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace geodecay
