#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

namespace geodecay {

// Symmetric matrix coefficient S(t) of the Jacobi system P'' = -P S.
struct MatrixCoefficient {
  int dim = 0;
  std::function<Eigen::MatrixXd(double)> fn;
  std::vector<double> kinks;
};

// Dense-output solution of P'' = -P S on [0, T] with the derived Riccati
// quantities. Q = P^{-1} P' is only formed where |det P| stays above the
// conditioning floor (1e-10 of the largest sampled |det P|) and before the
// first degeneracy.
class JacobiMatrixSolution {
 public:
  int dimension() const { return dim_; }
  double horizon() const { return t_.back(); }

  const std::vector<double>& times() const { return t_; }
  const std::vector<Eigen::MatrixXd>& P_samples() const { return p_; }
  const std::vector<Eigen::MatrixXd>& Pprime_samples() const { return dp_; }
  const std::vector<double>& det_samples() const { return det_; }

  const std::vector<double>& q_times() const { return q_t_; }
  const std::vector<Eigen::MatrixXd>& Q_samples() const { return q_; }

  // First time with det P <= 0 (conjugate point), if one was detected.
  std::optional<double> first_degenerate_time() const { return degenerate_t_; }
  double conditioning_floor() const { return floor_; }

  // Quintic Hermite evaluation between nodes (uses P'' = -P S at the nodes).
  void eval(double t, Eigen::MatrixXd& P, Eigen::MatrixXd& Pprime) const;
  double det_at(double t) const;
  Eigen::MatrixXd S_at(double t) const { return S_.fn(t); }

  double max_q_asymmetry() const;

 private:
  friend JacobiMatrixSolution solve_jacobi_matrix(const MatrixCoefficient&,
                                                  const Eigen::MatrixXd&, const Eigen::MatrixXd&,
                                                  double, double);
  std::size_t locate(double t) const;
  int dim_ = 0;
  std::vector<double> t_;
  std::vector<Eigen::MatrixXd> p_, dp_, ddp_;
  std::vector<double> det_;
  std::vector<double> q_t_;
  std::vector<Eigen::MatrixXd> q_;
  std::optional<double> degenerate_t_;
  double floor_ = 0.0;
  MatrixCoefficient S_;
};

// Integrates P'' = -P S(t) from P(0) = P0, P'(0) = P0p. S must be
// symmetric-valued and dimensions must agree.
JacobiMatrixSolution solve_jacobi_matrix(const MatrixCoefficient& S, const Eigen::MatrixXd& P0,
                                         const Eigen::MatrixXd& P0p, double T, double tol = 1e-10);

// Max-norm residual of Q' + Q^2 + S over the sampled Q points, with Q'
// estimated by a five-point finite difference on dense output. Small values
// certify that the integrated P actually satisfies the Riccati structure.
double riccati_residual(const JacobiMatrixSolution& sol);

}  // namespace geodecay
