#pragma once

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace kipa {

using complex = std::complex<double>;

/// One resonator mode. Rates are angular (rad/s).
///
/// kappa_e couples the mode to the probe line, kappa_i is internal loss.
class ResonatorParams {
 public:
  /// Throws ValidationError unless kappa_e > 0 and kappa_i >= 0.
  ResonatorParams(double omega0, double kappa_e, double kappa_i);

  double omega0() const noexcept { return omega0_; }
  double kappa_e() const noexcept { return kappa_e_; }
  double kappa_i() const noexcept { return kappa_i_; }
  double kappa() const noexcept { return kappa_e_ + kappa_i_; }
  /// Coupling efficiency kappa_e / kappa, in (0, 1].
  double eta() const noexcept { return kappa_e_ / kappa(); }

  ResonatorParams with_omega0(double omega0) const;

 private:
  double omega0_;
  double kappa_e_;
  double kappa_i_;
};

/// Kinetic-inductance film: L(I) = L0 [1 + (I/I*)^2].
class KineticFilm {
 public:
  KineticFilm(double l0_henry, double i_star_ampere,
              std::optional<double> l_sheet_henry_per_square = std::nullopt);

  double l0() const noexcept { return l0_; }
  double i_star() const noexcept { return i_star_; }
  std::optional<double> l_sheet() const noexcept { return l_sheet_; }

 private:
  double l0_;
  double i_star_;
  std::optional<double> l_sheet_;
};

struct DirectDrive {
  double g;  // rad/s
};

struct PowerDrive {
  double power_w;
  double z_ref_ohm = 50.0;
  double calibration = 1.0;
};

using PumpDrive = std::variant<DirectDrive, PowerDrive>;

class PumpConfig {
 public:
  /// phi_p is wrapped into [0, 2*pi).
  PumpConfig(double omega_p, double phi_p, double i_dc_ampere, PumpDrive drive);

  double omega_p() const noexcept { return omega_p_; }
  double phi_p() const noexcept { return phi_p_; }
  double i_dc() const noexcept { return i_dc_; }
  const PumpDrive& drive() const noexcept { return drive_; }

 private:
  double omega_p_;
  double phi_p_;
  double i_dc_;
  PumpDrive drive_;
};

/// Two linearly coupled modes. Only mode_a carries the parametric pump.
class CoupledSystem {
 public:
  CoupledSystem(ResonatorParams mode_a, ResonatorParams mode_b, double coupling_j);

  const ResonatorParams& mode_a() const noexcept { return mode_a_; }
  const ResonatorParams& mode_b() const noexcept { return mode_b_; }
  double coupling() const noexcept { return j_; }

 private:
  ResonatorParams mode_a_;
  ResonatorParams mode_b_;
  double j_;
};

/// Complex amplitudes on a strictly increasing angular-frequency grid.
class ComplexSpectrum {
 public:
  ComplexSpectrum() = default;
  ComplexSpectrum(std::vector<double> freqs, std::vector<complex> values);

  std::span<const double> freqs() const noexcept { return freqs_; }
  std::span<const complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return freqs_.size(); }

  /// |value|^2 per point.
  std::vector<double> power() const;
  std::vector<double> power_db() const;

 private:
  std::vector<double> freqs_;
  std::vector<complex> values_;
};

/// Parametric stage followed by a classical amplification chain.
struct NoiseChain {
  double gain_k = 1.0;      // linear power gain of the parametric stage
  double gain_h = 1.0;      // linear power gain of the classical chain
  double n_h = 0.5;         // classical chain input-referred noise quanta
  double eta = 1.0;         // coupling efficiency of the parametric stage
  double temperature = 0.0;         // input-noise temperature (K)
  double device_temperature = 0.0;  // K
  double omega = 0.0;               // signal frequency (rad/s)

  /// Throws ValidationError on G_k < 1, G_h < 1, n_h < 1/2, eta outside
  /// (0, 1], negative temperatures or omega <= 0.
  void validate() const;
};

/// Linearly spaced grid of n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace kipa
