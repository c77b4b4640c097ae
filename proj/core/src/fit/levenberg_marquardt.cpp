#include "kipa/fit/levenberg_marquardt.hpp"

#include <cmath>
#include <limits>

#include "kipa/errors.hpp"

namespace kipa::fit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Problem {
  const ResidualFn& fn;
  Eigen::Index m;
  const Eigen::VectorXd& scale;

  // Returns +inf for a trial point that produced non-finite residuals.
  double eval(const Eigen::VectorXd& q, Eigen::VectorXd& r) const {
    r.resize(m);
    fn(q.cwiseProduct(scale), r);
    if (!r.allFinite()) return kInf;
    return r.squaredNorm();
  }
};

Eigen::MatrixXd jacobian(const Problem& pb, const Eigen::VectorXd& q, const Eigen::VectorXd& r0,
                         double step) {
  const Eigen::Index n = q.size();
  Eigen::MatrixXd jac(pb.m, n);
  Eigen::VectorXd r(pb.m);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd qk = q;
    qk(k) += step;
    pb.eval(qk, r);
    jac.col(k) = (r - r0) / step;
  }
  return jac;
}

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& residuals, Eigen::Index residual_count,
                             const Eigen::VectorXd& p0, const Eigen::VectorXd& scale,
                             const LmOptions& opt) {
  const Eigen::Index n = p0.size();
  if (scale.size() != n || (scale.array() <= 0.0).any()) {
    throw ValidationError("parameter scales must be positive, one per parameter");
  }
  if (residual_count < n) {
    throw ValidationError("fewer residuals than parameters");
  }

  const Problem pb{residuals, residual_count, scale};
  Eigen::VectorXd q = p0.cwiseQuotient(scale);
  Eigen::VectorXd r;
  double rss = pb.eval(q, r);
  if (!std::isfinite(rss)) throw ValidationError("initial parameters give non-finite residuals");

  LmResult out;
  double lambda = opt.lambda0;
  Eigen::MatrixXd jac;
  Eigen::VectorXd r_trial;

  for (int iter = 1; iter <= opt.max_iterations && !out.converged; ++iter) {
    out.iterations = iter;
    if (rss == 0.0) {
      out.converged = true;
      break;
    }
    jac = jacobian(pb, q, r, opt.jacobian_step);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    Eigen::VectorXd diag = jtj.diagonal();
    const double floor = std::max(diag.maxCoeff(), 1e-300) * 1e-15;
    diag = diag.cwiseMax(floor);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal() += lambda * diag;
      const Eigen::VectorXd dq = lhs.ldlt().solve(-grad);
      const Eigen::VectorXd q_trial = q + dq;
      const double rss_trial = pb.eval(q_trial, r_trial);
      if (rss_trial < rss) {
        const double rel_step =
            (dq.array().abs() / q.array().abs().max(1.0)).maxCoeff();
        const double rel_rss = (rss - rss_trial) / rss;
        q = q_trial;
        r = r_trial;
        rss = rss_trial;
        lambda = std::max(lambda * 0.5, 1e-300);
        accepted = true;
        if (rel_step < opt.x_tol || rel_rss < opt.f_tol) out.converged = true;
      } else {
        lambda *= 2.0;
        if (lambda > opt.lambda_max) {
          // No descent left at any damping: stationary to working precision.
          out.converged = true;
          break;
        }
      }
    }
  }

  out.params = q.cwiseProduct(scale);
  out.rss = rss;

  // Covariance at the optimum from a fresh Jacobian.
  jac = jacobian(pb, q, r, opt.jacobian_step);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const Eigen::Index dof = residual_count - n;
  const double s2 = dof > 0 ? rss / static_cast<double>(dof) : 0.0;
  out.rank = 0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd var = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const Eigen::VectorXd v = svd.matrixV().col(k);
    if (smax > 0.0 && sv(k) > opt.rank_tol * smax) {
      ++out.rank;
      cov += v * v.transpose() / (sv(k) * sv(k));
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(v(i)) > 1e-8) var(i) = kInf;
      }
    }
  }
  cov *= s2;
  out.covariance = scale.asDiagonal() * cov * scale.asDiagonal();
  out.sigma.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.sigma(i) = std::isinf(var(i)) ? kInf : std::sqrt(std::max(out.covariance(i, i), 0.0));
  }
  return out;
}

}  // namespace kipa::fit
