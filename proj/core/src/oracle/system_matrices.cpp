#include "kipa/oracle/system_matrices.hpp"

#include <cmath>

#include "kipa/errors.hpp"

namespace kipa::oracle {

namespace {

constexpr complex kI{0.0, 1.0};

struct ModeRates {
  double kappa_e;
  double kappa_i;
};

// Shared B, C, D for n modes with an extrinsic and an intrinsic port each.
void fill_ports(SystemMatrices& s, const ModeRates* rates) {
  const int n = s.modes;
  s.b = Eigen::MatrixXd::Zero(2 * n, 4 * n);
  s.c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.d = Eigen::MatrixXd::Zero(2 * n, 4 * n);
  for (int conj = 0; conj < 2; ++conj) {
    for (int m = 0; m < n; ++m) {
      const int row = conj * n + m;
      const double se = std::sqrt(rates[m].kappa_e);
      s.b(row, input_index(n, m, Port::extrinsic, conj)) = se;
      s.b(row, input_index(n, m, Port::intrinsic, conj)) = std::sqrt(rates[m].kappa_i);
      s.c(row, row) = se;
      s.d(row, input_index(n, m, Port::extrinsic, conj)) = 1.0;
    }
  }
}

}  // namespace

Eigen::MatrixXcd SystemMatrices::a(double omega) const {
  const auto dim = drift.rows();
  return Eigen::MatrixXcd::Identity(dim, dim) * (-kI * omega) - drift;
}

void SystemMatrices::validate() const {
  const Eigen::Index s = 2 * modes;
  if (modes < 1 || drift.rows() != s || drift.cols() != s || b.rows() != s ||
      b.cols() != 2 * s || c.rows() != s || c.cols() != s || d.rows() != s ||
      d.cols() != 2 * s) {
    throw ValidationError("system matrix dimensions are inconsistent");
  }
}

SystemMatrices single_mode_system(const ResonatorParams& res, double g, double delta,
                                  double phi_p) {
  SystemMatrices s;
  s.modes = 1;
  const complex e = std::polar(1.0, phi_p);
  const double hk = 0.5 * res.kappa();
  s.drift.resize(2, 2);
  s.drift << -(kI * delta + hk), -kI * g * e,
             kI * g * std::conj(e), kI * delta - hk;
  const ModeRates r[] = {{res.kappa_e(), res.kappa_i()}};
  fill_ports(s, r);
  return s;
}

SystemMatrices bare_two_mode_system(const CoupledSystem& sys, double g, double delta_a,
                                    double delta_b, double phi_p) {
  SystemMatrices s;
  s.modes = 2;
  const complex e = std::polar(1.0, phi_p);
  const double ha = 0.5 * sys.mode_a().kappa();
  const double hb = 0.5 * sys.mode_b().kappa();
  const double j = sys.coupling();
  s.drift = Eigen::MatrixXcd::Zero(4, 4);
  s.drift(0, 0) = -(kI * delta_a + ha);
  s.drift(0, 1) = -kI * j;
  s.drift(0, 2) = -kI * g * e;
  s.drift(1, 0) = -kI * j;
  s.drift(1, 1) = -(kI * delta_b + hb);
  s.drift(2, 0) = kI * g * std::conj(e);
  s.drift(2, 2) = kI * delta_a - ha;
  s.drift(2, 3) = kI * j;
  s.drift(3, 2) = kI * j;
  s.drift(3, 3) = kI * delta_b - hb;
  const ModeRates r[] = {{sys.mode_a().kappa_e(), sys.mode_a().kappa_i()},
                         {sys.mode_b().kappa_e(), sys.mode_b().kappa_i()}};
  fill_ports(s, r);
  return s;
}

SystemMatrices hybrid_rwa_system(const HybridModes& modes, double g_c, double delta,
                                 double phi_p) {
  SystemMatrices s;
  s.modes = 2;
  const complex e = std::polar(1.0, phi_p);
  const double dp = delta + modes.half_splitting;
  const double dm = delta - modes.half_splitting;
  const double hp = 0.5 * modes.kappa_plus;
  const double hm = 0.5 * modes.kappa_minus;
  s.drift = Eigen::MatrixXcd::Zero(4, 4);
  s.drift(0, 0) = -(kI * dp + hp);
  s.drift(0, 3) = -kI * g_c * e;
  s.drift(1, 1) = -(kI * dm + hm);
  s.drift(1, 2) = -kI * g_c * e;
  s.drift(2, 2) = kI * dp - hp;
  s.drift(2, 1) = kI * g_c * std::conj(e);
  s.drift(3, 3) = kI * dm - hm;
  s.drift(3, 0) = kI * g_c * std::conj(e);
  const ModeRates r[] = {{modes.kappa_e_plus, modes.kappa_plus - modes.kappa_e_plus},
                         {modes.kappa_e_minus, modes.kappa_minus - modes.kappa_e_minus}};
  fill_ports(s, r);
  return s;
}

}  // namespace kipa::oracle
