#include <benchmark/benchmark.h>

#include "kipa/oracle/system_matrices.hpp"
#include "kipa/oracle/time_domain.hpp"
#include "kipa/oracle/transfer.hpp"
#include "kipa/single_mode.hpp"
#include "kipa/units.hpp"

namespace {

using namespace kipa;

const ResonatorParams kRes(hz_to_rad(7.4e9), hz_to_rad(19e6), hz_to_rad(4e6));
const double kG = 0.45 * kRes.kappa();

void BM_ClosedForm(benchmark::State& state) {
  const auto grid = linspace(-kRes.kappa(), kRes.kappa(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_mode_gain(kRes, kG, 0.0, 0.0, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClosedForm)->Arg(64)->Arg(1024);

void BM_MatrixTransfer(benchmark::State& state) {
  const auto grid = linspace(-kRes.kappa(), kRes.kappa(), static_cast<std::size_t>(state.range(0)));
  const auto sysm = oracle::single_mode_system(kRes, kG, 0.0, 0.0);
  for (auto _ : state) {
    for (double w : grid) benchmark::DoNotOptimize(oracle::matrix_transfer(sysm, w));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatrixTransfer)->Arg(64)->Arg(1024);

void BM_TimeDomain(benchmark::State& state) {
  const auto run = oracle::TimeDomainRun::make(kRes, kG, 0.0, 0.0, 0.3 * kRes.kappa());
  for (auto _ : state) benchmark::DoNotOptimize(oracle::time_domain_gain(run));
}
BENCHMARK(BM_TimeDomain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
