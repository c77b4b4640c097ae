#pragma once

#include <array>
#include <span>

#include "kipa/types.hpp"

namespace kipa {

struct GainFactors {
  complex signal;
  complex idler;
};

struct GainSpectra {
  ComplexSpectrum signal;
  ComplexSpectrum idler;
};

struct StabilityReport {
  bool stable;
  double margin;  // kappa/2 - g
};

using Matrix2c = std::array<std::array<complex, 2>, 2>;

StabilityReport stability_single(const ResonatorParams& res, double g);

/// Signal and idler factors at one offset, no stability check.
GainFactors single_mode_factors(const ResonatorParams& res, double g, double delta,
                                double phi_p, double omega) noexcept;

/// Throws UnstableRegime when g >= kappa/2.
GainSpectra single_mode_gain(const ResonatorParams& res, double g, double delta,
                             double phi_p, std::span<const double> omega_grid);

/// Degenerate on-resonance power gain for a fully overcoupled mode.
double on_resonance_gain(const ResonatorParams& res, double g);

/// |G_S(0) + G_I(0) e^{i dphi}|^2 at zero detuning.
double phase_sensitive_gain(const ResonatorParams& res, double g, double delta_phi);

struct PhaseExtrema {
  double gain_max;
  double gain_min;
  double phi_max;  // in [0, 2pi)
  double phi_min;
};

PhaseExtrema phase_sensitive_extrema(const ResonatorParams& res, double g);

/// Zero-detuning susceptibility. Throws PoleAtFrequency on a real pole.
Matrix2c susceptibility(const ResonatorParams& res, double g, double phi_p, double omega);

}  // namespace kipa
