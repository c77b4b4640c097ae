#pragma once

#include "kipa/types.hpp"

namespace kipa {

/// Bose-Einstein occupation 1/(exp(hbar w / kT) - 1); zero at T = 0.
double thermal_occupancy(double omega, double temperature);

/// (1/2) coth(hbar w / 2kT); 1/2 at T = 0.
double half_coth(double omega, double temperature);

struct AddedNoise {
  double n_k;              // parametric stage, infinite-gain form
  double n_add;            // whole chain, input referred
  double n_k_finite_gain;  // parametric stage at the chain's G_k
};

/// Thermal quanta are taken at the device temperature.
AddedNoise added_noise(const NoiseChain& chain);

/// Input-referred noise PSD in W/Hz for an input load at temperature T.
double total_noise_psd(const NoiseChain& chain, double temperature);

struct OnOffSpectra {
  double s_on;   // W
  double s_off;  // W
};

struct OnOffSetup {
  double bandwidth_hz;
  double gain_k;
  double gain_h;
  double alpha;        // transmission between sample and switch, (0, 1]
  double omega;
  double temperature;  // calibration source
};

/// Measured spectra with the pump switched on and off for a stage adding n_k
/// quanta behind a chain with noise n_h.
OnOffSpectra pump_onoff_forward(const OnOffSetup& setup, double n_k, double n_h);

/// First-order inversion of the on/off spectra. Neglects a term of order
/// n_h (alpha - (G_h-1)/G_h) / (alpha (G_k-1)). Throws NonPhysical when the
/// result is negative beyond 1e-6.
double pump_onoff_nk(double s_on, double s_off, const OnOffSetup& setup);

/// Exact inversion when the chain noise n_h is known.
double pump_onoff_nk_exact(double s_on, double s_off, const OnOffSetup& setup, double n_h);

/// Solves the chain formula for n_k given a measured n_add.
double nk_from_nadd(double n_add, double gain_k, double n_h, double nbar);

}  // namespace kipa
