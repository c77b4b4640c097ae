#include "kipa/noise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa {

namespace {

double reduced_energy(double omega, double temperature) {
  if (!(omega > 0.0)) throw ValidationError("omega must be > 0");
  if (!(temperature >= 0.0)) throw ValidationError("temperature must be >= 0");
  return constants::hbar * omega / (constants::k_boltzmann * temperature);
}

void validate_setup(const OnOffSetup& s) {
  if (!(s.gain_k > 1.0)) throw ValidationError("pump on/off inversion needs G_k > 1");
  if (!(s.gain_h >= 1.0)) throw ValidationError("G_h must be >= 1");
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  if (!(s.bandwidth_hz > 0.0)) throw ValidationError("bandwidth must be > 0");
  if (!(s.omega > 0.0)) throw ValidationError("omega must be > 0");
  if (!(s.temperature >= 0.0)) throw ValidationError("temperature must be >= 0");
}

}  // namespace

double thermal_occupancy(double omega, double temperature) {
  if (temperature == 0.0) {
    reduced_energy(omega, 1.0);
    return 0.0;
  }
  return 1.0 / std::expm1(reduced_energy(omega, temperature));
}

double half_coth(double omega, double temperature) {
  return thermal_occupancy(omega, temperature) + 0.5;
}

AddedNoise added_noise(const NoiseChain& chain) {
  chain.validate();
  const double nbar = thermal_occupancy(chain.omega, chain.device_temperature);
  const double r = (1.0 - chain.eta) / chain.eta;
  const double gk = chain.gain_k;
  AddedNoise out{};
  out.n_k = 2.0 * r * (nbar + 0.5);
  out.n_add = ((gk - 1.0) / gk) * (nbar + 0.5 + out.n_k) + chain.n_h / gk;
  if (gk > 1.0) {
    const double sg = std::sqrt(gk) + 1.0;
    out.n_k_finite_gain = 2.0 * r * sg * sg / (gk - 1.0) * (nbar + 0.5);
  } else {
    out.n_k_finite_gain = r == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

double total_noise_psd(const NoiseChain& chain, double temperature) {
  const auto an = added_noise(chain);
  return constants::hbar * chain.omega * chain.gain_h * chain.gain_k *
         (half_coth(chain.omega, temperature) + an.n_add);
}

OnOffSpectra pump_onoff_forward(const OnOffSetup& s, double n_k, double n_h) {
  validate_setup(s);
  const double nbar = thermal_occupancy(s.omega, s.temperature);
  const double unit = constants::hbar * s.omega * s.gain_h * s.bandwidth_hz;
  const double gk = s.gain_k;
  const double n_add = ((gk - 1.0) / gk) * (nbar + 0.5 + n_k) + n_h / gk;
  OnOffSpectra out{};
  out.s_off = unit * (nbar + 0.5 + (s.gain_h - 1.0) / s.gain_h * n_h);
  out.s_on = unit * (s.alpha * gk * (nbar + 0.5 + n_add) + (1.0 - s.alpha) * (nbar + 0.5));
  return out;
}

namespace {

double onoff_first_order(double s_on, double s_off, const OnOffSetup& s) {
  validate_setup(s);
  const double nbar = thermal_occupancy(s.omega, s.temperature);
  return (s_on - s_off) / (constants::hbar * s.omega * s.bandwidth_hz * (s.gain_k - 1.0) *
                           s.gain_h * s.alpha) -
         (2.0 * nbar + 1.0);
}

double require_physical(double n_k) {
  if (n_k < -1e-6) {
    throw NonPhysical("inferred n_k = " + std::to_string(n_k) +
                      " is negative; check the gain and loss calibration");
  }
  return n_k;
}

}  // namespace

double pump_onoff_nk(double s_on, double s_off, const OnOffSetup& s) {
  return require_physical(onoff_first_order(s_on, s_off, s));
}

double pump_onoff_nk_exact(double s_on, double s_off, const OnOffSetup& s, double n_h) {
  const double first = onoff_first_order(s_on, s_off, s);
  return require_physical(first - n_h * (s.alpha - (s.gain_h - 1.0) / s.gain_h) /
                                      (s.alpha * (s.gain_k - 1.0)));
}

double nk_from_nadd(double n_add, double gain_k, double n_h, double nbar) {
  if (!(gain_k > 1.0)) throw ValidationError("G_k must be > 1");
  return (n_add - n_h / gain_k) * gain_k / (gain_k - 1.0) - nbar - 0.5;
}

}  // namespace kipa
