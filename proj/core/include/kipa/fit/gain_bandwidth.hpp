#pragma once

#include "kipa/fit/trace.hpp"
#include "kipa/types.hpp"

namespace kipa::fit {

struct GainBandwidth {
  double peak_gain_db;
  double bandwidth_hz;  // FWHM of the linear power gain
  double gbp_hz;        // sqrt(peak gain) * bandwidth
};

/// Spectrum frequencies are angular offsets (rad/s).
GainBandwidth gain_bandwidth_product(const ComplexSpectrum& spectrum);
GainBandwidth gain_bandwidth_product(const Trace& gain_db_trace);

}  // namespace kipa::fit
