#include "kipa/types.hpp"

#include <cmath>
#include <string>

#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

}  // namespace

ResonatorParams::ResonatorParams(double omega0, double kappa_e, double kappa_i)
    : omega0_(omega0), kappa_e_(kappa_e), kappa_i_(kappa_i) {
  require_finite(omega0, "omega0");
  require_finite(kappa_e, "kappa_e");
  require_finite(kappa_i, "kappa_i");
  if (!(kappa_e > 0.0)) throw ValidationError("kappa_e must be > 0");
  if (!(kappa_i >= 0.0)) throw ValidationError("kappa_i must be >= 0");
  if (omega0 < 0.0) throw ValidationError("omega0 must be >= 0");
}

ResonatorParams ResonatorParams::with_omega0(double omega0) const {
  return ResonatorParams(omega0, kappa_e_, kappa_i_);
}

KineticFilm::KineticFilm(double l0_henry, double i_star_ampere,
                         std::optional<double> l_sheet_henry_per_square)
    : l0_(l0_henry), i_star_(i_star_ampere), l_sheet_(l_sheet_henry_per_square) {
  require_finite(l0_henry, "L0");
  require_finite(i_star_ampere, "I*");
  if (!(l0_henry > 0.0)) throw ValidationError("L0 must be > 0");
  if (!(i_star_ampere > 0.0)) throw ValidationError("I* must be > 0");
  if (l_sheet_ && !(*l_sheet_ > 0.0)) throw ValidationError("sheet inductance must be > 0");
}

PumpConfig::PumpConfig(double omega_p, double phi_p, double i_dc_ampere, PumpDrive drive)
    : omega_p_(omega_p), i_dc_(i_dc_ampere), drive_(drive) {
  require_finite(omega_p, "omega_p");
  require_finite(phi_p, "phi_p");
  require_finite(i_dc_ampere, "I_dc");
  if (omega_p < 0.0) throw ValidationError("pump frequency must be >= 0");
  phi_p_ = std::fmod(phi_p, kTwoPi);
  if (phi_p_ < 0.0) phi_p_ += kTwoPi;

  if (const auto* p = std::get_if<PowerDrive>(&drive_)) {
    require_finite(p->power_w, "P_p");
    if (p->power_w < 0.0) throw ValidationError("pump power must be >= 0");
    if (!(p->z_ref_ohm > 0.0)) throw ValidationError("Z_ref must be > 0");
    if (!(p->calibration > 0.0)) throw ValidationError("pump calibration factor must be > 0");
  } else {
    const auto& d = std::get<DirectDrive>(drive_);
    require_finite(d.g, "g");
    if (d.g < 0.0) throw ValidationError("parametric rate g must be >= 0");
  }
}

CoupledSystem::CoupledSystem(ResonatorParams mode_a, ResonatorParams mode_b, double coupling_j)
    : mode_a_(mode_a), mode_b_(mode_b), j_(coupling_j) {
  require_finite(coupling_j, "J");
  if (coupling_j < 0.0) throw ValidationError("coupling J must be >= 0");
}

ComplexSpectrum::ComplexSpectrum(std::vector<double> freqs, std::vector<complex> values)
    : freqs_(std::move(freqs)), values_(std::move(values)) {
  if (freqs_.size() != values_.size()) {
    throw ValidationError("spectrum frequency and value lengths differ");
  }
  for (std::size_t i = 1; i < freqs_.size(); ++i) {
    if (!(freqs_[i] > freqs_[i - 1])) {
      throw ValidationError("spectrum frequencies must be strictly increasing");
    }
  }
}

std::vector<double> ComplexSpectrum::power() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::norm(values_[i]);
  return out;
}

std::vector<double> ComplexSpectrum::power_db() const {
  std::vector<double> out = power();
  for (double& v : out) v = to_db(v);
  return out;
}

void NoiseChain::validate() const {
  if (!(gain_k >= 1.0)) throw ValidationError("G_k must be >= 1");
  if (!(gain_h >= 1.0)) throw ValidationError("G_h must be >= 1");
  if (!(n_h >= 0.5)) throw ValidationError("n_h must be >= 0.5");
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in (0, 1]");
  if (!(temperature >= 0.0) || !(device_temperature >= 0.0)) {
    throw ValidationError("temperatures must be >= 0");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("omega must be > 0");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out[n - 1] = hi;
  return out;
}

}  // namespace kipa
