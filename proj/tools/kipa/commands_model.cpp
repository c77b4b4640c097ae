#include <algorithm>
#include <cmath>
#include <limits>

#include "commands.hpp"
#include "kipa/device.hpp"
#include "kipa/double_mode.hpp"
#include "kipa/errors.hpp"
#include "kipa/fit/gain_bandwidth.hpp"
#include "kipa/io/config.hpp"
#include "kipa/io/trace_csv.hpp"
#include "kipa/noise.hpp"
#include "kipa/peaks.hpp"
#include "kipa/single_mode.hpp"
#include "kipa/units.hpp"

namespace kipa::cli {

namespace {

// Ring frequency once the DC bias of the configured pump is applied.
double biased_ring(const io::DeviceConfig& cfg) {
  return cfg.ring.omega0() +
         bias_frequency_shift(cfg.ring.omega0(), cfg.pump.i_dc(), cfg.film.i_star());
}

double choose_g(const PumpChoice& p, double threshold, const io::DeviceConfig& cfg) {
  if (p.over_threshold) return *p.over_threshold * threshold;
  if (p.g_hz) return hz_to_rad(*p.g_hz);
  return pump_rate(cfg.pump, cfg.film, biased_ring(cfg));
}

std::vector<double> probe_grid(const Grid& g) {
  auto w = linspace(-0.5 * g.span_hz, 0.5 * g.span_hz, static_cast<std::size_t>(g.points));
  for (double& v : w) v = hz_to_rad(v);
  return w;
}

std::vector<double> to_hz(std::span<const double> w) {
  std::vector<double> f(w.begin(), w.end());
  for (double& v : f) v = rad_to_hz(v);
  return f;
}

void write_gain_csv(const std::string& path, std::span<const double> omega,
                    const std::vector<double>& gain_db) {
  if (path.empty()) return;
  io::save_trace(fit::Trace(fit::TraceKind::gain_db, to_hz(omega), gain_db), path);
}

void add_pump(io::ResultRecord& rec, double g, double threshold) {
  rec.add("g_hz", rad_to_hz(g), "Hz");
  rec.add("threshold_hz", rad_to_hz(threshold), "Hz");
  rec.add("g_over_threshold", g / threshold, "1");
}

}  // namespace

io::ResultRecord cmd_gain(const GainArgs& a, const Log& log) {
  const auto cfg = io::load_config(a.config);
  const auto& res = cfg.ring;
  const double thr = 0.5 * res.kappa();
  const double g = choose_g(a.pump, thr, cfg);
  const auto grid = probe_grid(a.grid);
  log.debug("gain: g/2pi = ", rad_to_hz(g), " Hz over ", grid.size(), " points");

  const auto spectra =
      single_mode_gain(res, g, hz_to_rad(a.delta_hz), a.phi_rad, grid);
  const auto sig_db = spectra.signal.power_db();
  const auto idl_db = spectra.idler.power_db();
  const auto k = static_cast<std::size_t>(std::max_element(sig_db.begin(), sig_db.end()) - sig_db.begin());
  const auto centre = single_mode_factors(res, g, hz_to_rad(a.delta_hz), a.phi_rad, 0.0);
  write_gain_csv(a.out, grid, sig_db);

  io::ResultRecord rec("gain");
  add_pump(rec, g, thr);
  rec.add("eta", res.eta(), "1");
  rec.add("peak_gain_db", sig_db[k], "dB");
  rec.add("peak_offset_hz", rad_to_hz(grid[k]), "Hz");
  rec.add("centre_gain_db", to_db(std::norm(centre.signal)), "dB");
  rec.add("idler_peak_gain_db", *std::max_element(idl_db.begin(), idl_db.end()), "dB");
  rec.add("points", static_cast<double>(grid.size()), "1");
  log.info("gain: peak ", sig_db[k], " dB at ", rad_to_hz(grid[k]), " Hz");
  return rec;
}

io::ResultRecord cmd_phase(const PhaseArgs& a, const Log& log) {
  const auto cfg = io::load_config(a.config);
  const auto& res = cfg.ring;
  const double thr = 0.5 * res.kappa();
  const double g = choose_g(a.pump, thr, cfg);

  std::vector<double> phis(static_cast<std::size_t>(a.points)), gains(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    phis[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(phis.size());
    gains[i] = to_db(phase_sensitive_gain(res, g, phis[i]));
  }
  if (!a.out.empty()) io::write_text(a.out, io::format_columns("phase_rad,gain_db", phis, gains));
  const auto ext = phase_sensitive_extrema(res, g);

  io::ResultRecord rec("phase");
  add_pump(rec, g, thr);
  rec.add("eta", res.eta(), "1");
  rec.add("gain_max_db", to_db(ext.gain_max), "dB");
  rec.add("gain_min_db", to_db(ext.gain_min), "dB");
  rec.add("phi_max_rad", ext.phi_max, "rad");
  rec.add("phi_min_rad", ext.phi_min, "rad");
  rec.add("max_times_min", ext.gain_max * ext.gain_min, "1");
  rec.add("points", static_cast<double>(phis.size()), "1");
  log.info("phase: max ", to_db(ext.gain_max), " dB, min ", to_db(ext.gain_min), " dB");
  return rec;
}

io::ResultRecord cmd_double_gain(const DoubleGainArgs& a, const Log& log) {
  const auto cfg = io::load_config(a.config);
  const auto sys = cfg.coupled();
  const double half_dab = 0.5 * (sys.mode_a().omega0() - sys.mode_b().omega0());
  const double delta = hz_to_rad(a.delta_hz);
  const double da = delta + half_dab;
  const double db = delta - half_dab;
  const double paper = stability_double(sys, 0.0).threshold;
  const double dynamic = dynamical_threshold(sys, da, db);
  const double thr = std::min(paper, dynamic);
  const double g = choose_g(a.pump, thr, cfg);
  const auto grid = probe_grid(a.grid);

  io::ResultRecord rec("double-gain");
  std::vector<double> curve(grid.size());
  if (a.model == "bare") {
    const auto s = double_mode_gain_bare(sys, g, da, db, a.phi_rad, grid);
    curve = s.a_signal.power_db();
  } else {
    const auto s = double_mode_gain_hybrid(sys, g, delta, a.phi_rad, grid, cfg.hybridization_form);
    const auto sp = s.signal_plus.values();
    const auto sm = s.signal_minus.values();
    for (std::size_t i = 0; i < grid.size(); ++i) curve[i] = to_db(std::norm(sp[i] + sm[i] + 1.0));
    for (const auto& w : s.warnings) rec.warn(w);
  }
  write_gain_csv(a.out, grid, curve);

  rec.add("model", a.model);
  add_pump(rec, g, thr);
  rec.add("coupled_threshold_hz", rad_to_hz(paper), "Hz");
  rec.add("dynamical_threshold_hz", rad_to_hz(dynamic), "Hz");
  rec.add("j_hz", rad_to_hz(sys.coupling()), "Hz");
  const auto peaks = find_peaks(curve, 3.0);
  rec.add("peak_count", static_cast<double>(peaks.size()), "1");
  std::vector<double> where;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const double w = refine_peak(grid, curve, peaks[i].index);
    where.push_back(w);
    rec.add("peak_" + std::to_string(i) + "_offset_hz", rad_to_hz(w), "Hz");
    rec.add("peak_" + std::to_string(i) + "_gain_db", peaks[i].value, "dB");
  }
  if (where.size() >= 2) {
    const double sep = where.back() - where.front();
    rec.add("separation_hz", rad_to_hz(sep), "Hz");
    if (sys.coupling() > 0.0) rec.add("separation_over_2j", sep / (2.0 * sys.coupling()), "1");
  }
  log.info("double-gain (", a.model, "): ", peaks.size(), " peaks");
  return rec;
}

io::ResultRecord cmd_regime_map(const RegimeMapArgs& a, const Log& log) {
  const auto cfg = io::load_config(a.config);
  const auto sys = cfg.coupled();
  const double centre = sys.mode_a().omega0() + sys.mode_b().omega0();
  const double span = a.pump_span_hz ? hz_to_rad(*a.pump_span_hz) : 10.0 * sys.coupling();
  if (!(span > 0.0)) throw ValidationError("pump span is zero; pass --pump-span-hz when J = 0");
  const auto pumps = linspace(centre - 0.5 * span, centre + 0.5 * span,
                              static_cast<std::size_t>(a.points));

  double thr = stability_double(sys, 0.0).threshold;
  for (double wp : pumps) {
    thr = std::min(thr, dynamical_threshold(sys, sys.mode_a().omega0() - 0.5 * wp,
                                            sys.mode_b().omega0() - 0.5 * wp));
  }
  const double g = choose_g(a.pump, thr, cfg);
  log.debug("regime-map: threshold/2pi = ", rad_to_hz(thr), " Hz");
  const auto map = pump_regime_map(sys, g, pumps);
  if (!a.out.empty()) {
    io::write_text(a.out, io::format_columns("pump_hz,gain_db", to_hz(map.pump_grid), map.peak_gain_db));
  }

  io::ResultRecord rec("regime-map");
  add_pump(rec, g, thr);
  rec.add("j_hz", rad_to_hz(sys.coupling()), "Hz");
  rec.add("peak_count", static_cast<double>(map.peaks.size()), "1");
  for (const auto& p : map.peaks) {
    const std::string label = to_string(p.regime);
    rec.add(label + "_pump_hz", rad_to_hz(p.pump_omega), "Hz");
    rec.add(label + "_detuning_hz", rad_to_hz(p.detuning), "Hz");
    rec.add(label + "_gain_db", p.gain_db, "dB");
  }
  if (map.outer_separation) {
    rec.add("outer_separation_hz", rad_to_hz(*map.outer_separation), "Hz");
    if (sys.coupling() > 0.0) {
      rec.add("separation_over_4j", *map.outer_separation / (4.0 * sys.coupling()), "1");
    }
  }
  for (const auto& w : map.warnings) rec.warn(w);
  log.info("regime-map: ", map.peaks.size(), " regimes");
  return rec;
}

io::ResultRecord cmd_stability(const StabilityArgs& a, const Log& log) {
  const auto cfg = io::load_config(a.config);
  const auto sys = cfg.coupled();
  const double half_dab = 0.5 * (sys.mode_a().omega0() - sys.mode_b().omega0());
  const double delta = hz_to_rad(a.delta_hz);
  const double da = delta + half_dab;
  const double db = delta - half_dab;
  const auto coop = stability_double(sys, 0.0);
  const double dynamic = dynamical_threshold(sys, da, db);

  io::ResultRecord rec("stability");
  rec.add("single_threshold_hz", rad_to_hz(0.5 * cfg.ring.kappa()), "Hz");
  rec.add("c0", coop.c0, "1");
  rec.add("coupled_threshold_hz", rad_to_hz(coop.threshold), "Hz");
  rec.add("dynamical_threshold_hz", rad_to_hz(dynamic), "Hz");
  if (a.g_hz) {
    const double g = hz_to_rad(*a.g_hz);
    const auto single = stability_single(cfg.ring, g);
    const auto coupled = stability_double(sys, g);
    const double abscissa = spectral_abscissa(sys, g, da, db);
    rec.add("g_hz", *a.g_hz, "Hz");
    rec.add("single_stable", single.stable);
    rec.add("single_margin_hz", rad_to_hz(single.margin), "Hz");
    rec.add("coupled_stable", coupled.stable);
    rec.add("coupled_margin_hz", rad_to_hz(coupled.margin), "Hz");
    rec.add("dynamical_stable", abscissa < 0.0);
    rec.add("spectral_abscissa_hz", rad_to_hz(abscissa), "Hz");
    if (coupled.stable && !(abscissa < 0.0)) {
      rec.warn("cooperativity criterion reports stable but the drift matrix has a growing mode");
    }
  }
  log.info("stability: dynamical threshold ", rad_to_hz(dynamic), " Hz");
  return rec;
}

io::ResultRecord cmd_noise(const NoiseArgs& a, const Log& log) {
  std::optional<io::DeviceConfig> cfg;
  if (!a.config.empty()) cfg = io::load_config(a.config);
  double eta = 0.0;
  if (a.eta) eta = *a.eta;
  else if (cfg) eta = cfg->ring.eta();
  else throw ValidationError("pass --eta or --config");
  double omega = 0.0;
  if (a.f_hz) omega = hz_to_rad(*a.f_hz);
  else if (cfg) omega = biased_ring(*cfg);
  else throw ValidationError("pass --f-hz or --config");

  NoiseChain chain;
  chain.gain_k = from_db(a.gk_db);
  chain.gain_h = from_db(a.gh_db);
  chain.n_h = a.n_h;
  chain.eta = eta;
  chain.temperature = a.t_k;
  chain.device_temperature = a.tdev_k;
  chain.omega = omega;
  const auto an = added_noise(chain);

  io::ResultRecord rec("noise");
  rec.add("f_hz", rad_to_hz(omega), "Hz");
  rec.add("eta", eta, "1");
  rec.add("nbar_device", thermal_occupancy(omega, a.tdev_k), "quanta");
  rec.add("n_k", an.n_k, "quanta");
  rec.add("n_k_finite_gain", an.n_k_finite_gain, "quanta");
  rec.add("n_add", an.n_add, "quanta");
  rec.add("total_noise_psd", total_noise_psd(chain, a.t_k), "W/Hz");
  if (a.s_on_w) {
    const OnOffSetup setup{*a.bw_hz, chain.gain_k, chain.gain_h, a.alpha, omega, a.t_k};
    rec.add("n_k_onoff", pump_onoff_nk(*a.s_on_w, *a.s_off_w, setup), "quanta");
  }
  log.info("noise: n_add = ", an.n_add);
  return rec;
}

io::ResultRecord cmd_gbp(const GbpArgs& a, const Log& log) {
  io::ResultRecord rec("gbp");
  fit::GainBandwidth gb{};
  if (!a.trace.empty()) {
    if (!a.config.empty()) throw ValidationError("pass either a trace or --config, not both");
    gb = fit::gain_bandwidth_product(io::load_trace(a.trace, fit::TraceKind::gain_db));
  } else if (!a.config.empty()) {
    const auto cfg = io::load_config(a.config);
    const double thr = 0.5 * cfg.ring.kappa();
    const double g = choose_g(a.pump, thr, cfg);
    const auto s = single_mode_gain(cfg.ring, g, 0.0, 0.0, probe_grid(a.grid));
    gb = fit::gain_bandwidth_product(s.signal);
    add_pump(rec, g, thr);
    rec.add("kappa_e_hz", rad_to_hz(cfg.ring.kappa_e()), "Hz");
    rec.add("gbp_over_kappa_e", hz_to_rad(gb.gbp_hz) / cfg.ring.kappa_e(), "1");
  } else {
    throw ValidationError("gbp needs a gain_db trace or --config");
  }
  rec.add("peak_gain_db", gb.peak_gain_db, "dB");
  rec.add("bandwidth_hz", gb.bandwidth_hz, "Hz");
  rec.add("gbp_hz", gb.gbp_hz, "Hz");
  log.info("gbp: ", gb.gbp_hz, " Hz");
  return rec;
}

}  // namespace kipa::cli
