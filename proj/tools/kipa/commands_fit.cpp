#include "commands.hpp"
#include "kipa/fit/fits.hpp"
#include "kipa/io/trace_csv.hpp"
#include "kipa/units.hpp"

namespace kipa::cli {

namespace {

io::ResultRecord to_record(const char* operation, const fit::FitResult& fr) {
  io::ResultRecord rec(operation);
  for (const auto& p : fr.params) {
    rec.add(p.name, p.value, p.unit);
    if (p.sigma) rec.add(p.name + "_sigma", *p.sigma, p.unit);
  }
  rec.add("residual_rms", fr.residual_rms, "1");
  rec.add("converged", fr.converged);
  rec.add("iterations", static_cast<double>(fr.iterations), "1");
  for (const auto& w : fr.warnings) rec.warn(w);
  return rec;
}

}  // namespace

io::ResultRecord cmd_fit_resonance(const FitArgs& a, const Log& log) {
  const auto trace = io::load_trace(a.trace, fit::TraceKind::reflection);
  std::optional<fit::ReflectionGuess> guess;
  if (a.f0_hz) guess = fit::ReflectionGuess{*a.f0_hz, *a.kappa_e_hz, *a.kappa_i_hz};
  const auto fr = fit::fit_reflection(trace, guess);
  auto rec = to_record("fit-resonance", fr);
  const double ke = fr.value("kappa_e");
  rec.add("eta", ke / (ke + fr.value("kappa_i")), "1");
  log.info("fit-resonance: f0 = ", fr.value("f0"), " Hz after ", fr.iterations, " iterations");
  return rec;
}

io::ResultRecord cmd_fit_bias(const FitArgs& a, const Log& log) {
  const auto fr = fit::fit_bias_sweep(io::load_trace(a.trace, fit::TraceKind::bias_shift));
  log.info("fit-bias: I* = ", fr.value("I_star"), " A");
  return to_record("fit-bias", fr);
}

io::ResultRecord cmd_fit_gain(const FitArgs& a, const Log& log) {
  const auto fr = fit::fit_gain_profile(io::load_trace(a.trace, fit::TraceKind::gain_db),
                                        a.kappa_hint_hz);
  auto rec = to_record("fit-gain", fr);
  const double kappa = fr.value("kappa_e") + fr.value("kappa_i");
  rec.add("g_over_threshold", fr.value("g") / (0.5 * kappa), "1");
  log.info("fit-gain: g = ", fr.value("g"), " Hz");
  return rec;
}

io::ResultRecord cmd_fit_noise(const FitArgs& a, const Log& log) {
  const auto fr = fit::fit_noise_temperature(io::load_trace(a.trace, fit::TraceKind::noise_psd),
                                             hz_to_rad(*a.f_hz));
  log.info("fit-noise: n_add = ", fr.value("n_add"));
  return to_record("fit-noise", fr);
}

}  // namespace kipa::cli
