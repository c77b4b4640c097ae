#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "kipa/io/result.hpp"

namespace kipa::cli {

enum class LogLevel { quiet, info, debug };

class Log {
 public:
  Log(LogLevel level, std::ostream& err) : level_(level), err_(err) {}

  template <typename... T>
  void info(const T&... parts) const {
    if (level_ != LogLevel::quiet) ((err_ << "kipa: ") << ... << parts) << '\n';
  }
  template <typename... T>
  void debug(const T&... parts) const {
    if (level_ == LogLevel::debug) ((err_ << "kipa[debug]: ") << ... << parts) << '\n';
  }

 private:
  LogLevel level_;
  std::ostream& err_;
};

struct PumpChoice {
  std::optional<double> over_threshold;
  std::optional<double> g_hz;
};

struct Grid {
  double span_hz = 2e8;
  int points = 2001;
};

struct GainArgs {
  std::string config;
  PumpChoice pump;
  Grid grid;
  double delta_hz = 0.0;
  double phi_rad = 0.0;
  std::string out;
};

struct PhaseArgs {
  std::string config;
  PumpChoice pump;
  int points = 64;
  std::string out;
};

struct DoubleGainArgs {
  std::string config;
  PumpChoice pump;
  Grid grid;
  std::string model = "bare";
  double delta_hz = 0.0;
  double phi_rad = 0.0;
  std::string out;
};

struct RegimeMapArgs {
  std::string config;
  PumpChoice pump;
  std::optional<double> pump_span_hz;
  int points = 401;
  std::string out;
};

struct StabilityArgs {
  std::string config;
  std::optional<double> g_hz;
  double delta_hz = 0.0;
};

struct NoiseArgs {
  std::string config;
  double gk_db = 0.0;
  double gh_db = 0.0;
  double n_h = 0.5;
  std::optional<double> eta;
  std::optional<double> f_hz;
  double t_k = 0.0;
  double tdev_k = 0.0;
  std::optional<double> s_on_w;
  std::optional<double> s_off_w;
  std::optional<double> bw_hz;
  double alpha = 1.0;
};

struct FitArgs {
  std::string trace;
  std::optional<double> f0_hz;
  std::optional<double> kappa_e_hz;
  std::optional<double> kappa_i_hz;
  std::optional<double> kappa_hint_hz;
  std::optional<double> f_hz;
};

struct GbpArgs {
  std::string trace;
  std::string config;
  PumpChoice pump;
  Grid grid;
};

struct OracleArgs {
  long draws = 1000;
  std::uint64_t seed = 0;
};

io::ResultRecord cmd_gain(const GainArgs& a, const Log& log);
io::ResultRecord cmd_phase(const PhaseArgs& a, const Log& log);
io::ResultRecord cmd_double_gain(const DoubleGainArgs& a, const Log& log);
io::ResultRecord cmd_regime_map(const RegimeMapArgs& a, const Log& log);
io::ResultRecord cmd_stability(const StabilityArgs& a, const Log& log);
io::ResultRecord cmd_noise(const NoiseArgs& a, const Log& log);
io::ResultRecord cmd_gbp(const GbpArgs& a, const Log& log);

io::ResultRecord cmd_fit_resonance(const FitArgs& a, const Log& log);
io::ResultRecord cmd_fit_bias(const FitArgs& a, const Log& log);
io::ResultRecord cmd_fit_gain(const FitArgs& a, const Log& log);
io::ResultRecord cmd_fit_noise(const FitArgs& a, const Log& log);

io::ResultRecord cmd_oracle_check(const OracleArgs& a, const Log& log);

}  // namespace kipa::cli
