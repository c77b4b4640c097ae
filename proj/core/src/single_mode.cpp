#include "kipa/single_mode.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa {

namespace {

constexpr complex kI{0.0, 1.0};

void require_pump_rate(double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("g must be finite and >= 0");
}

void require_stable(const ResonatorParams& res, double g) {
  require_pump_rate(g);
  const auto s = stability_single(res, g);
  if (!s.stable) {
    throw UnstableRegime("g = " + std::to_string(g) + " rad/s is at or above the threshold kappa/2 = " +
                         std::to_string(0.5 * res.kappa()) + " rad/s");
  }
}

}  // namespace

StabilityReport stability_single(const ResonatorParams& res, double g) {
  const double margin = 0.5 * res.kappa() - g;
  return {margin > 0.0, margin};
}

GainFactors single_mode_factors(const ResonatorParams& res, double g, double delta,
                                double phi_p, double omega) noexcept {
  const double k = res.kappa();
  const double ek = res.kappa_e();
  const complex den = delta * delta - g * g + (kI * omega - 0.5 * k) * (kI * omega - 0.5 * k);
  const complex signal = ek * (0.5 * k - kI * (omega + delta)) / den - 1.0;
  const complex idler = -kI * ek * g * std::polar(1.0, phi_p) / den;
  return {signal, idler};
}

GainSpectra single_mode_gain(const ResonatorParams& res, double g, double delta, double phi_p,
                             std::span<const double> omega_grid) {
  require_stable(res, g);
  std::vector<double> f(omega_grid.begin(), omega_grid.end());
  std::vector<complex> s(f.size()), i(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const auto gf = single_mode_factors(res, g, delta, phi_p, f[n]);
    s[n] = gf.signal;
    i[n] = gf.idler;
  }
  return {ComplexSpectrum(f, std::move(s)), ComplexSpectrum(f, std::move(i))};
}

double on_resonance_gain(const ResonatorParams& res, double g) {
  require_stable(res, g);
  const double r = g / res.kappa();
  const double amp = 2.0 / (1.0 - 4.0 * r * r) - 1.0;
  return amp * amp;
}

double phase_sensitive_gain(const ResonatorParams& res, double g, double delta_phi) {
  require_stable(res, g);
  const auto gf = single_mode_factors(res, g, 0.0, 0.0, 0.0);
  return std::norm(gf.signal + gf.idler * std::polar(1.0, delta_phi));
}

PhaseExtrema phase_sensitive_extrema(const ResonatorParams& res, double g) {
  require_stable(res, g);
  const auto gf = single_mode_factors(res, g, 0.0, 0.0, 0.0);
  const double as = std::abs(gf.signal);
  const double ai = std::abs(gf.idler);
  // Constructive interference when the idler phasor lines up with the signal.
  double phi_max = std::arg(gf.signal) - std::arg(gf.idler);
  if (ai == 0.0) phi_max = 0.0;
  phi_max = std::fmod(phi_max, kTwoPi);
  if (phi_max < 0.0) phi_max += kTwoPi;
  const double phi_min = std::fmod(phi_max + kPi, kTwoPi);
  return {(as + ai) * (as + ai), (as - ai) * (as - ai), phi_max, phi_min};
}

Matrix2c susceptibility(const ResonatorParams& res, double g, double phi_p, double omega) {
  require_pump_rate(g);
  const double hk = 0.5 * res.kappa();
  const complex d = kI * omega - hk;
  const complex den = d * d - g * g;
  if (std::abs(den) <= 1e-14 * (hk * hk + g * g + omega * omega)) {
    throw PoleAtFrequency("susceptibility pole at omega = " + std::to_string(omega) + " rad/s");
  }
  const complex e = std::polar(1.0, phi_p);
  Matrix2c chi{};
  chi[0][0] = (-kI * omega + hk) / den;
  chi[0][1] = (-kI * g * e) / den;
  chi[1][0] = (kI * g * std::conj(e)) / den;
  chi[1][1] = (-kI * omega + hk) / den;
  return chi;
}

}  // namespace kipa
