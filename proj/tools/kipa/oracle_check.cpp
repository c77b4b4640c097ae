#include <algorithm>
#include <cmath>

#include "commands.hpp"
#include "kipa/double_mode.hpp"
#include "kipa/errors.hpp"
#include "kipa/oracle/system_matrices.hpp"
#include "kipa/oracle/transfer.hpp"
#include "kipa/random.hpp"
#include "kipa/single_mode.hpp"

namespace kipa::cli {

namespace {

using oracle::input_index;
using oracle::Port;

constexpr double kRelTol = 1e-9;
constexpr double kCommTol = 1e-9;

// Entries smaller than this are compared absolutely.
constexpr double kFloor = 1e-12;

double rel_err(complex closed, complex matrix) {
  return std::abs(closed - matrix) / std::max(std::abs(matrix), kFloor);
}

struct Worst {
  double single = 0.0;
  double commutation = 0.0;
  double bare = 0.0;
  double hybrid = 0.0;
};

void single_draw(SplitMix64& rng, Worst& w) {
  const double kappa = rng.uniform(0.5, 2.0);
  const double eta = rng.uniform(0.5, 1.0);
  const ResonatorParams res(0.0, eta * kappa, (1.0 - eta) * kappa);
  const double g = rng.uniform(0.0, 0.95) * 0.5 * kappa;
  const double delta = rng.uniform(-kappa, kappa);
  const double phi = rng.uniform(0.0, kTwoPi);
  const double omega = rng.uniform(-3.0 * kappa, 3.0 * kappa);

  const auto gf = single_mode_factors(res, g, delta, phi, omega);
  const auto m = oracle::matrix_transfer(oracle::single_mode_system(res, g, delta, phi), omega);
  w.single = std::max({w.single, rel_err(gf.signal, m(0, 0)),
                       rel_err(gf.idler, m(0, input_index(1, 0, Port::extrinsic, true)))});
  w.commutation = std::max(w.commutation,
                           std::abs(oracle::commutation_residual(res, g, omega, delta)));
}

CoupledSystem draw_coupled(SplitMix64& rng) {
  const ResonatorParams a(0.0, rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.5));
  const ResonatorParams b(0.0, rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.5));
  return CoupledSystem(a, b, rng.uniform(0.0, 2.0));
}

void bare_draw(SplitMix64& rng, Worst& w) {
  const auto sys = draw_coupled(rng);
  const double scale = sys.mode_a().kappa() + sys.mode_b().kappa();
  const double da = rng.uniform(-scale, scale);
  const double db = rng.uniform(-scale, scale);
  const double thr = std::min(stability_double(sys, 0.0).threshold, dynamical_threshold(sys, da, db));
  const double g = rng.uniform(0.0, 0.95) * thr;
  const double phi = rng.uniform(0.0, kTwoPi);
  const double omega = rng.uniform(-3.0 * scale, 3.0 * scale);

  const auto f = bare_mode_factors(sys, g, da, db, phi, omega);
  const auto m = oracle::matrix_transfer(oracle::bare_two_mode_system(sys, g, da, db, phi), omega);
  const int ae = input_index(2, 0, Port::extrinsic, false);
  const int be = input_index(2, 1, Port::extrinsic, false);
  const int ae_c = input_index(2, 0, Port::extrinsic, true);
  const int be_c = input_index(2, 1, Port::extrinsic, true);
  w.bare = std::max({w.bare, rel_err(f.a_signal, m(0, ae)), rel_err(f.a_idler, m(0, be_c)),
                     rel_err(f.b_signal, m(1, be)), rel_err(f.b_idler, m(1, ae_c))});
}

void hybrid_draw(SplitMix64& rng, Worst& w) {
  const auto sys = draw_coupled(rng);
  const auto modes = hybrid_modes(sys);
  const double scale = modes.kappa_plus + modes.kappa_minus;
  const double delta = rng.uniform(-scale, scale);
  const double phi = rng.uniform(0.0, kTwoPi);
  const double omega = rng.uniform(-3.0 * scale, 3.0 * scale);
  double g_c = rng.uniform(0.0, 0.95) * 0.5 * std::min(modes.kappa_plus, modes.kappa_minus);
  if (!hybrid_stable(modes, g_c, delta)) g_c = 0.0;

  const auto f = hybrid_factors(modes, g_c, delta, phi, omega);
  const auto m = oracle::matrix_transfer(oracle::hybrid_rwa_system(modes, g_c, delta, phi), omega);
  const int pe = input_index(2, 0, Port::extrinsic, false);
  const int me = input_index(2, 1, Port::extrinsic, false);
  const int pe_c = input_index(2, 0, Port::extrinsic, true);
  const int me_c = input_index(2, 1, Port::extrinsic, true);
  w.hybrid = std::max({w.hybrid, rel_err(f.signal_plus, m(0, pe)), rel_err(f.idler_plus, m(0, me_c)),
                       rel_err(f.signal_minus, m(1, me)), rel_err(f.idler_minus, m(1, pe_c))});
}

}  // namespace

io::ResultRecord cmd_oracle_check(const OracleArgs& a, const Log& log) {
  SplitMix64 rng(a.seed);
  Worst w;
  for (long i = 0; i < a.draws; ++i) {
    single_draw(rng, w);
    bare_draw(rng, w);
    hybrid_draw(rng, w);
  }
  const bool pass = w.single < kRelTol && w.bare < kRelTol && w.hybrid < kRelTol &&
                    w.commutation < kCommTol;

  io::ResultRecord rec("oracle-check");
  rec.add("seed", std::to_string(a.seed));
  rec.add("draws", static_cast<double>(a.draws), "1");
  rec.add("single_max_rel_err", w.single, "1");
  rec.add("commutation_max_residual", w.commutation, "1");
  rec.add("double_bare_max_rel_err", w.bare, "1");
  rec.add("double_hybrid_max_rel_err", w.hybrid, "1");
  rec.add("pass", pass);
  log.info("oracle-check: ", pass ? "pass" : "FAIL", " over ", a.draws, " draws");
  if (!pass) rec.warn("closed forms disagree with the matrix solve beyond 1e-9");
  return rec;
}

}  // namespace kipa::cli
