#pragma once

#include <Eigen/Dense>

#include "kipa/double_mode.hpp"
#include "kipa/types.hpp"

namespace kipa::oracle {

enum class Port { extrinsic = 0, intrinsic = 1 };

/// Linear input-output model dX/dt = drift X + B X_in, X_out = C X - D X_in.
///
/// State order is [m_0 .. m_{n-1}, m_0^dag .. m_{n-1}^dag]; inputs follow
/// [m_0e, m_0i, m_1e, m_1i, ..., then the same block conjugated].
struct SystemMatrices {
  int modes = 1;
  Eigen::MatrixXcd drift;  // 2n x 2n
  Eigen::MatrixXd b;       // 2n x 4n
  Eigen::MatrixXd c;       // 2n x 2n, diagonal
  Eigen::MatrixXd d;       // 2n x 4n, selects the extrinsic inputs

  /// A(omega) = -i omega I - drift.
  Eigen::MatrixXcd a(double omega) const;

  /// Throws ValidationError on inconsistent dimensions.
  void validate() const;
};

/// Column of the input vector for a port of a mode.
constexpr int input_index(int modes, int mode, Port port, bool conjugate) noexcept {
  return (conjugate ? 2 * modes : 0) + 2 * mode + static_cast<int>(port);
}

SystemMatrices single_mode_system(const ResonatorParams& res, double g, double delta, double phi_p);

SystemMatrices bare_two_mode_system(const CoupledSystem& sys, double g, double delta_a,
                                    double delta_b, double phi_p);

/// Collective modes with only the resonant c+ c- pump term kept.
SystemMatrices hybrid_rwa_system(const HybridModes& modes, double g_c, double delta, double phi_p);

}  // namespace kipa::oracle
