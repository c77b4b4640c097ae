#pragma once

#include <Eigen/Dense>

#include "kipa/oracle/system_matrices.hpp"

namespace kipa::oracle {

/// M(omega) = C A(omega)^{-1} B - D by LU solve. Throws SingularAt when the
/// 2-norm condition number of A exceeds max_condition.
Eigen::MatrixXcd matrix_transfer(const SystemMatrices& sysm, double omega,
                                 double max_condition = 1e12);

/// Normalised residual of the single-mode photon-number identity
/// |G_I|^2 (1 + r) = |G_S|^2 + r |G_S + 1|^2 - 1 with r = (1 - eta)/eta.
double commutation_residual(const ResonatorParams& res, double g, double omega,
                            double delta = 0.0);

}  // namespace kipa::oracle
