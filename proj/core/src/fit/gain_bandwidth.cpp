#include "kipa/fit/gain_bandwidth.hpp"

#include <cmath>

#include "kipa/fit/fits.hpp"
#include "kipa/units.hpp"

namespace kipa::fit {

GainBandwidth gain_bandwidth_product(const ComplexSpectrum& spectrum) {
  std::vector<double> f(spectrum.freqs().begin(), spectrum.freqs().end());
  for (double& v : f) v = rad_to_hz(v);
  return gain_bandwidth_product(Trace(TraceKind::gain_db, std::move(f), spectrum.power_db()));
}

GainBandwidth gain_bandwidth_product(const Trace& gain_db_trace) {
  const auto fit = fit_lorentzian(gain_db_trace);
  const double peak = fit.value("peak_lin");
  const double bw = fit.value("fwhm");
  return {to_db(peak), bw, std::sqrt(peak) * bw};
}

}  // namespace kipa::fit
