#include <benchmark/benchmark.h>

#include <cmath>

#include "kipa/fit/fits.hpp"
#include "kipa/random.hpp"
#include "kipa/units.hpp"

namespace {

using namespace kipa;

// Pumped reflection gain in dB with 0.05 dB noise, rates in Hz.
fit::Trace gain_trace(std::size_t n) {
  const double g = 8e6, ke = 19e6, ki = 4e6, fc = 7.4e9;
  auto f = linspace(fc - 40e6, fc + 40e6, n);
  std::vector<double> y(n);
  SplitMix64 rng(3);
  for (std::size_t i = 0; i < n; ++i) {
    const complex d(0.5 * (ke + ki), -(f[i] - fc));
    y[i] = to_db(std::norm(ke * d / (d * d - g * g) - 1.0)) + 0.05 * rng.normal();
  }
  return fit::Trace(fit::TraceKind::gain_db, std::move(f), std::move(y));
}

void BM_FitGainProfile(benchmark::State& state) {
  const auto trace = gain_trace(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit::fit_gain_profile(trace));
}
BENCHMARK(BM_FitGainProfile)->Arg(201)->Arg(2001)->Unit(benchmark::kMicrosecond);

}  // namespace
