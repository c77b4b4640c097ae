#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kipa/fit/levenberg_marquardt.hpp"
#include "kipa/fit/trace.hpp"

namespace kipa::fit {

struct FitParam {
  std::string name;
  double value;
  std::optional<double> sigma;
  std::string unit;
};

struct FitResult {
  std::vector<FitParam> params;
  double residual_rms = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;

  /// Throws std::out_of_range for an unknown name.
  const FitParam& at(const std::string& name) const;
  double value(const std::string& name) const { return at(name).value; }
  double sigma(const std::string& name) const;
};

/// Frequencies and rates in Hz (rates are kappa / 2pi).
struct ReflectionGuess {
  double f0_hz;
  double kappa_e_hz;
  double kappa_i_hz;
};

/// S11(f) = kappa_e / (kappa/2 - i (f - f0)) - 1, complex residuals.
/// Without a guess the start point comes from the dip. Throws
/// IllConditioned for a trace without a resolvable dip and NotConverged
/// after the iteration cap.
FitResult fit_reflection(const Trace& trace, std::optional<ReflectionGuess> init = std::nullopt,
                         const LmOptions& options = {});

/// Linear regression of f against I_dc^2; reports f0_zero (Hz) and I_star (A).
FitResult fit_bias_sweep(const Trace& trace);
FitResult fit_bias_sweep(std::span<const double> i_dc, std::span<const double> f_hz);

/// |G_S(f - f_center)|^2 in dB at zero detuning. kappa_hint is the total
/// linewidth in Hz. Throws UnstableFit when the best fit sits at or above
/// threshold.
FitResult fit_gain_profile(const Trace& trace, std::optional<double> kappa_hint = std::nullopt,
                           const LmOptions& options = {});

/// N(T) = G_tot hbar omega [coth(hbar omega / 2kT)/2 + n_add]. Throws
/// NonPhysical when n_add is negative by more than three standard errors.
FitResult fit_noise_temperature(const Trace& trace, double omega, const LmOptions& options = {});

/// a / (1 + ((f - f0)/(w/2))^2) + b on the linear power of a gain_db trace.
/// Throws NoPeak unless exactly one prominent peak is present.
FitResult fit_lorentzian(const Trace& trace, const LmOptions& options = {});

}  // namespace kipa::fit
