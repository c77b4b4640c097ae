#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kipa/types.hpp"

namespace kipa {

struct DoubleStability {
  bool stable;
  double c0;         // cooperativity 4 J^2 / (kappa_a kappa_b)
  double threshold;  // kappa_a (1 + C0) / 2
  double margin;     // threshold - g
};

/// Cooperativity-enhanced threshold. It only tracks the zero-frequency
/// instability; see dynamical_threshold for the full drift spectrum.
DoubleStability stability_double(const CoupledSystem& sys, double g);

/// Largest real part among the eigenvalues of the 4x4 drift matrix in the
/// frame rotating at half the pump frequency.
double spectral_abscissa(const CoupledSystem& sys, double g, double delta_a, double delta_b);

/// Smallest g at which the spectral abscissa reaches zero.
double dynamical_threshold(const CoupledSystem& sys, double delta_a, double delta_b);

enum class HybridizationForm { as_printed, standard };

struct HybridFrequencies {
  double omega_plus;
  double omega_minus;
  double delta_ab;  // (omega_a - omega_b) / 2
};

HybridFrequencies hybridize(const CoupledSystem& sys,
                            HybridizationForm form = HybridizationForm::as_printed);

/// Collective modes seen from the ring port.
struct HybridModes {
  double kappa_plus;
  double kappa_minus;
  double kappa_e_plus;
  double kappa_e_minus;
  double half_splitting;  // (omega_+ - omega_-) / 2
  double mixing_angle;    // 0 for a pure ring mode
};

HybridModes hybrid_modes(const CoupledSystem& sys,
                         HybridizationForm form = HybridizationForm::as_printed);

/// Rate of the c+ c- process generated by a pump of rate g on mode a.
double collective_pump_rate(const CoupledSystem& sys, double g);

struct HybridGain {
  ComplexSpectrum signal_plus;
  ComplexSpectrum idler_plus;
  ComplexSpectrum signal_minus;
  ComplexSpectrum idler_minus;
  std::vector<std::string> warnings;
};

struct HybridFactors {
  complex signal_plus;
  complex idler_plus;
  complex signal_minus;
  complex idler_minus;
};

HybridFactors hybrid_factors(const HybridModes& modes, double g_c, double delta, double phi_p,
                             double omega) noexcept;

/// Both RWA pairs (c+, c-^dag) and (c-, c+^dag) decay.
bool hybrid_stable(const HybridModes& modes, double g_c, double delta);

/// Gains of the collective modes for a collective pump rate g_c. Delta is the
/// detuning of the mode centre from half the pump frequency.
HybridGain double_mode_gain_hybrid(const HybridModes& modes, double g_c, double delta,
                                   double phi_p, std::span<const double> omega_grid);

/// Same, starting from the bare system and the ring pump rate g.
HybridGain double_mode_gain_hybrid(const CoupledSystem& sys, double g, double delta, double phi_p,
                                   std::span<const double> omega_grid,
                                   HybridizationForm form = HybridizationForm::as_printed);

struct BareFactors {
  complex a_signal;
  complex a_idler;
  complex b_signal;
  complex b_idler;
};

BareFactors bare_mode_factors(const CoupledSystem& sys, double g, double delta_a, double delta_b,
                              double phi_p, double omega) noexcept;

struct BareGain {
  ComplexSpectrum a_signal;
  ComplexSpectrum a_idler;
  ComplexSpectrum b_signal;
  ComplexSpectrum b_idler;
};

/// Throws UnstableRegime when either the cooperativity criterion or the
/// drift spectrum says the pumped system oscillates.
BareGain double_mode_gain_bare(const CoupledSystem& sys, double g, double delta_a,
                               double delta_b, double phi_p, std::span<const double> omega_grid);

enum class Regime { single_minus, double_mode, single_plus };

const char* to_string(Regime r) noexcept;

struct RegimePeak {
  Regime regime;
  double pump_omega;
  double detuning;  // omega_a - omega_p / 2
  double gain_db;
};

struct RegimeMap {
  std::vector<double> pump_grid;
  std::vector<double> peak_gain_db;  // NaN where the system is unstable
  std::vector<RegimePeak> peaks;
  std::optional<double> outer_separation;
  std::vector<std::string> warnings;
};

/// Scans the pump frequency and records the best a-mode signal gain found
/// over the probe band at each point.
RegimeMap pump_regime_map(const CoupledSystem& sys, double g, std::span<const double> pump_grid,
                          double min_prominence_db = 3.0);

}  // namespace kipa
