#pragma once

#include <Eigen/Dense>
#include <functional>

namespace kipa::fit {

struct LmOptions {
  int max_iterations = 200;
  double x_tol = 1e-10;     // max |dp_i| / max(|p_i|, scale_i)
  double f_tol = 1e-12;     // relative change of the residual sum of squares
  double lambda0 = 1e-3;
  double jacobian_step = 1e-6;  // forward-difference step, in units of scale
  double lambda_max = 1e12;
  double rank_tol = 1e-12;  // singular values below rank_tol * s_max are dropped
};

/// Writes the residual vector for a parameter vector. Non-finite entries
/// mark the trial point as rejected.
using ResidualFn = std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r)>;

struct LmResult {
  Eigen::VectorXd params;
  Eigen::VectorXd sigma;       // +inf along unidentifiable directions
  Eigen::MatrixXd covariance;  // residual-scaled (J^T J)^-1
  double rss = 0.0;
  int iterations = 0;
  int rank = 0;
  bool converged = false;
};

/// Damped Gauss-Newton with Marquardt diagonal scaling. `scale` sets the
/// natural size of each parameter; the damping halves on every accepted step
/// and doubles on every rejected one.
LmResult levenberg_marquardt(const ResidualFn& residuals, Eigen::Index residual_count,
                             const Eigen::VectorXd& p0, const Eigen::VectorXd& scale,
                             const LmOptions& options = {});

}  // namespace kipa::fit
