#pragma once

#include "kipa/types.hpp"

namespace kipa::oracle {

/// Coherent probe of a pumped single mode, integrated in the frame rotating
/// at half the pump frequency.
struct TimeDomainRun {
  ResonatorParams res;
  double g = 0.0;
  double delta = 0.0;
  double phi_p = 0.0;
  double drive_freq = 0.0;  // probe offset from omega_p / 2, rad/s
  complex drive_amp{1.0, 0.0};
  double step = 0.0;
  double settle_time = 0.0;
  double sample_time = 0.0;  // trailing demodulation window

  /// Default step 1/(50 max(kappa, |Delta| + |delta|, g)), settling 20/margin.
  static TimeDomainRun make(const ResonatorParams& res, double g, double delta, double phi_p,
                            double drive_freq, complex drive_amp = {1.0, 0.0});

  /// Decay rate of the slowest transient, kappa/2 - Re sqrt(g^2 - Delta^2).
  double margin() const;

  /// Throws UnstableRegime for margin <= 0, ValidationError for a bad step or
  /// a settling time shorter than 10/margin.
  void validate() const;
};

struct TimeDomainResult {
  double signal_gain;  // |out at the probe frequency|^2 / |drive|^2
  double idler_gain;   // |out at the mirror frequency|^2 / |drive|^2
  complex signal;      // demodulated complex amplitudes
  complex idler;
  bool degenerate;     // probe at omega_p/2: signal and idler coincide
  long steps;
};

/// Fixed-step RK4 integration followed by demodulation of the trailing
/// window. Throws NotSettled when the two halves of the window disagree by
/// more than 0.1%.
TimeDomainResult time_domain_gain(const TimeDomainRun& run);

}  // namespace kipa::oracle
