#include "kipa/oracle/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kipa/errors.hpp"
#include "kipa/single_mode.hpp"

namespace kipa::oracle {

Eigen::MatrixXcd matrix_transfer(const SystemMatrices& sysm, double omega, double max_condition) {
  sysm.validate();
  const Eigen::MatrixXcd a = sysm.a(omega);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "A(omega) is singular at omega = " << omega << " rad/s (condition " << cond << ")";
    throw SingularAt(os.str());
  }
  const Eigen::MatrixXcd x = a.partialPivLu().solve(sysm.b.cast<complex>());
  return sysm.c.cast<complex>() * x - sysm.d.cast<complex>();
}

double commutation_residual(const ResonatorParams& res, double g, double omega, double delta) {
  const auto gf = single_mode_factors(res, g, delta, 0.0, omega);
  const double r = res.kappa_i() / res.kappa_e();
  const double lhs = std::norm(gf.idler) * (1.0 + r);
  const double rhs = std::norm(gf.signal) + r * std::norm(gf.signal + 1.0) - 1.0;
  const double scale = std::max({1.0, std::abs(lhs), std::norm(gf.signal) * (1.0 + r)});
  return (lhs - rhs) / scale;
}

}  // namespace kipa::oracle
