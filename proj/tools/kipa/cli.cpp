#include "kipa/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "commands.hpp"
#include "kipa/errors.hpp"

namespace kipa::cli {

namespace {

const CLI::Range kFraction(0.0, 0.999999, "FRACTION");

void add_pump_choice(CLI::App* cmd, PumpChoice& p) {
  auto* over = cmd->add_option("--g-over-threshold", p.over_threshold,
                               "pump rate as a fraction of the stability threshold")
                   ->check(kFraction);
  auto* abs = cmd->add_option("--g-hz", p.g_hz, "pump rate g/2pi in Hz")
                  ->check(CLI::NonNegativeNumber);
  over->excludes(abs);
}

void add_grid(CLI::App* cmd, Grid& g) {
  cmd->add_option("--span-hz", g.span_hz, "probe span around half the pump frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--points", g.points, "grid points")
      ->check(CLI::Range(3, 10'000'000))
      ->capture_default_str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Self-checks report through a boolean "pass" output.
bool failed_check(const io::ResultRecord& rec) {
  for (const auto& o : rec.outputs()) {
    if (o.name == "pass") return !std::get<bool>(o.value);
  }
  return false;
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::io) return kInternal;
  return is_numeric_failure(code) ? kNumeric : kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  LogLevel level = LogLevel::info;
  if (const char* env = std::getenv("KIPA_LOG")) {
    const std::string v(env);
    if (v == "quiet") level = LogLevel::quiet;
    else if (v == "info") level = LogLevel::info;
    else if (v == "debug") level = LogLevel::debug;
    else {
      err << "ValidationError: KIPA_LOG must be quiet, info or debug (got '" << v << "')\n";
      return kInvalid;
    }
  }
  const Log log(level, err);

  CLI::App app{"Kinetic-inductance parametric amplifier modelling and calibration", "kipa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kipa 0.3.0");

  GainArgs gain;
  auto* c_gain = app.add_subcommand("gain", "single-mode gain spectrum");
  c_gain->add_option("--config", gain.config, "device JSON")->required()->check(CLI::ExistingFile);
  add_pump_choice(c_gain, gain.pump);
  add_grid(c_gain, gain.grid);
  c_gain->add_option("--delta-hz", gain.delta_hz, "mode detuning from half the pump frequency");
  c_gain->add_option("--phi-rad", gain.phi_rad, "pump phase");
  c_gain->add_option("--out", gain.out, "CSV output (freq_hz,gain_db)");

  PhaseArgs phase;
  auto* c_phase = app.add_subcommand("phase", "degenerate gain versus pump-probe phase");
  c_phase->add_option("--config", phase.config, "device JSON")->required()->check(CLI::ExistingFile);
  add_pump_choice(c_phase, phase.pump);
  c_phase->add_option("--points", phase.points, "phase samples on [0, 2pi)")
      ->check(CLI::Range(2, 1'000'000))
      ->capture_default_str();
  c_phase->add_option("--out", phase.out, "CSV output (phase_rad,gain_db)");

  DoubleGainArgs dgain;
  auto* c_dgain = app.add_subcommand("double-gain", "two-mode gain spectrum");
  c_dgain->add_option("--config", dgain.config, "device JSON")->required()->check(CLI::ExistingFile);
  add_pump_choice(c_dgain, dgain.pump);
  add_grid(c_dgain, dgain.grid);
  c_dgain->add_option("--model", dgain.model, "bare or hybrid")
      ->check(CLI::IsMember({"bare", "hybrid"}))
      ->capture_default_str();
  c_dgain->add_option("--delta-hz", dgain.delta_hz, "centre detuning from half the pump frequency");
  c_dgain->add_option("--phi-rad", dgain.phi_rad, "pump phase");
  c_dgain->add_option("--out", dgain.out, "CSV output (freq_hz,gain_db)");

  RegimeMapArgs rmap;
  auto* c_rmap = app.add_subcommand("regime-map", "best gain versus pump frequency");
  c_rmap->add_option("--config", rmap.config, "device JSON")->required()->check(CLI::ExistingFile);
  add_pump_choice(c_rmap, rmap.pump);
  c_rmap->add_option("--pump-span-hz", rmap.pump_span_hz, "pump sweep span (default 10 J)")
      ->check(CLI::PositiveNumber);
  c_rmap->add_option("--points", rmap.points, "pump grid points")
      ->check(CLI::Range(5, 100'000))
      ->capture_default_str();
  c_rmap->add_option("--out", rmap.out, "CSV output (pump_hz,gain_db)");

  StabilityArgs stab;
  auto* c_stab = app.add_subcommand("stability", "oscillation thresholds");
  c_stab->add_option("--config", stab.config, "device JSON")->required()->check(CLI::ExistingFile);
  c_stab->add_option("--g-hz", stab.g_hz, "pump rate to test")->check(CLI::NonNegativeNumber);
  c_stab->add_option("--delta-hz", stab.delta_hz, "centre detuning from half the pump frequency");

  NoiseArgs noise;
  auto* c_noise = app.add_subcommand("noise", "added noise of the amplification chain");
  c_noise->add_option("--config", noise.config, "device JSON (supplies eta and frequency)")
      ->check(CLI::ExistingFile);
  c_noise->add_option("--gk-db", noise.gk_db, "parametric stage gain")->required()->check(CLI::NonNegativeNumber);
  c_noise->add_option("--gh-db", noise.gh_db, "classical chain gain")->required()->check(CLI::NonNegativeNumber);
  c_noise->add_option("--nh", noise.n_h, "classical chain noise quanta")->required()->check(CLI::Range(0.5, 1e9));
  c_noise->add_option("--eta", noise.eta, "coupling efficiency")->check(CLI::Range(1e-9, 1.0));
  c_noise->add_option("--f-hz", noise.f_hz, "signal frequency")->check(CLI::PositiveNumber);
  c_noise->add_option("--t-k", noise.t_k, "input load temperature")->required()->check(CLI::NonNegativeNumber);
  c_noise->add_option("--tdev-k", noise.tdev_k, "device temperature")->required()->check(CLI::NonNegativeNumber);
  auto* s_on = c_noise->add_option("--s-on-w", noise.s_on_w, "pump-on spectrum (W)")->check(CLI::NonNegativeNumber);
  auto* s_off = c_noise->add_option("--s-off-w", noise.s_off_w, "pump-off spectrum (W)")->check(CLI::NonNegativeNumber);
  auto* bw = c_noise->add_option("--bw-hz", noise.bw_hz, "measurement bandwidth")->check(CLI::PositiveNumber);
  c_noise->add_option("--alpha", noise.alpha, "transmission before the switch")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  s_on->needs(s_off)->needs(bw);
  s_off->needs(s_on);

  FitArgs fres, fbias, fgain, fnoise;
  auto* c_fres = app.add_subcommand("fit-resonance", "fit a reflection trace");
  c_fres->add_option("trace", fres.trace, "reflection CSV")->required();
  auto* i_f0 = c_fres->add_option("--f0-hz", fres.f0_hz, "initial resonance")->check(CLI::PositiveNumber);
  auto* i_ke = c_fres->add_option("--kappa-e-hz", fres.kappa_e_hz, "initial kappa_e/2pi")->check(CLI::PositiveNumber);
  auto* i_ki = c_fres->add_option("--kappa-i-hz", fres.kappa_i_hz, "initial kappa_i/2pi")->check(CLI::NonNegativeNumber);
  i_f0->needs(i_ke)->needs(i_ki);
  i_ke->needs(i_f0);
  i_ki->needs(i_f0);

  auto* c_fbias = app.add_subcommand("fit-bias", "fit resonance frequency versus DC bias");
  c_fbias->add_option("trace", fbias.trace, "bias_shift CSV")->required();

  auto* c_fgain = app.add_subcommand("fit-gain", "fit a single-mode gain profile");
  c_fgain->add_option("trace", fgain.trace, "gain_db CSV")->required();
  c_fgain->add_option("--kappa-hint-hz", fgain.kappa_hint_hz, "total linewidth from a pump-off fit")
      ->check(CLI::PositiveNumber);

  auto* c_fnoise = app.add_subcommand("fit-noise", "fit output noise versus load temperature");
  c_fnoise->add_option("trace", fnoise.trace, "noise_psd CSV")->required();
  c_fnoise->add_option("--f-hz", fnoise.f_hz, "signal frequency")->required()->check(CLI::PositiveNumber);

  GbpArgs gbp;
  auto* c_gbp = app.add_subcommand("gbp", "gain-bandwidth product");
  c_gbp->add_option("trace", gbp.trace, "gain_db CSV (alternative to --config)");
  c_gbp->add_option("--config", gbp.config, "device JSON")->check(CLI::ExistingFile);
  add_pump_choice(c_gbp, gbp.pump);
  add_grid(c_gbp, gbp.grid);

  OracleArgs orc;
  auto* c_orc = app.add_subcommand("oracle-check", "closed forms against matrix solves");
  c_orc->add_option("--draws", orc.draws, "random parameter draws")
      ->check(CLI::Range(1L, 10'000'000L))
      ->capture_default_str();
  c_orc->add_option("--seed", orc.seed, "PRNG seed")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ValidationError: " << e.what() << '\n';
    return kInvalid;
  }

  struct Dispatch {
    CLI::App* cmd;
    std::function<io::ResultRecord()> fn;
    std::string file;  // input file folded into the digest
  };
  const std::vector<Dispatch> table = {
      {c_gain, [&] { return cmd_gain(gain, log); }, gain.config},
      {c_phase, [&] { return cmd_phase(phase, log); }, phase.config},
      {c_dgain, [&] { return cmd_double_gain(dgain, log); }, dgain.config},
      {c_rmap, [&] { return cmd_regime_map(rmap, log); }, rmap.config},
      {c_stab, [&] { return cmd_stability(stab, log); }, stab.config},
      {c_noise, [&] { return cmd_noise(noise, log); }, noise.config},
      {c_fres, [&] { return cmd_fit_resonance(fres, log); }, fres.trace},
      {c_fbias, [&] { return cmd_fit_bias(fbias, log); }, fbias.trace},
      {c_fgain, [&] { return cmd_fit_gain(fgain, log); }, fgain.trace},
      {c_fnoise, [&] { return cmd_fit_noise(fnoise, log); }, fnoise.trace},
      {c_gbp, [&] { return cmd_gbp(gbp, log); }, gbp.trace.empty() ? gbp.config : gbp.trace},
      {c_orc, [&] { return cmd_oracle_check(orc, log); }, ""},
  };

  for (const auto& d : table) {
    if (!d.cmd->parsed()) continue;
    try {
      io::ResultRecord rec = d.fn();
      std::string canonical;
      for (const auto& a : args) canonical += a + '\x1f';
      if (!d.file.empty()) canonical += slurp(d.file);
      rec.set_inputs_digest(io::digest(canonical));
      out << rec.to_json();
      return failed_check(rec) ? kNumeric : kOk;
    } catch (const Error& e) {
      err << e.what() << '\n';
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << '\n';
      return kInternal;
    }
  }
  err << "internal error: no subcommand dispatched\n";
  return kInternal;
}

}  // namespace kipa::cli
