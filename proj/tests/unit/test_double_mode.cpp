#include <gtest/gtest.h>

#include <cmath>

#include "kipa/double_mode.hpp"
#include "kipa/errors.hpp"
#include "kipa/random.hpp"
#include "kipa/single_mode.hpp"
#include "kipa/units.hpp"

namespace kipa {
namespace {

CoupledSystem anticrossing(double j_hz = 21.5e6) {
  const ResonatorParams ring(hz_to_rad(7.1327e9), hz_to_rad(19e6), hz_to_rad(4e6));
  const ResonatorParams aux(hz_to_rad(7.1327e9), hz_to_rad(2e6), hz_to_rad(2e6));
  return CoupledSystem(ring, aux, hz_to_rad(j_hz));
}

TEST(DoubleStability, UncoupledMatchesSingleMode) {
  const ResonatorParams a(0.0, 0.8, 0.4), b(0.0, 0.3, 0.1);
  const auto s = stability_double(CoupledSystem(a, b, 0.0), 0.1);
  EXPECT_EQ(s.c0, 0.0);
  EXPECT_DOUBLE_EQ(s.threshold, 0.5 * a.kappa());
  EXPECT_NEAR(dynamical_threshold(CoupledSystem(a, b, 0.0), 0.0, 0.0), 0.5 * a.kappa(), 1e-9);
}

TEST(DoubleStability, UnitCooperativity) {
  const ResonatorParams m(0.0, 1.0, 0.0);
  const auto s = stability_double(CoupledSystem(m, m, 0.5), 0.0);
  EXPECT_NEAR(s.c0, 1.0, 1e-15);
  EXPECT_NEAR(s.threshold, 1.0, 1e-15);
  const auto below = stability_double(CoupledSystem(m, m, 0.5), 0.999);
  EXPECT_TRUE(below.stable);
  EXPECT_GT(below.margin, 0.0);
}

TEST(DoubleStability, DynamicalThresholdMarksZeroAbscissa) {
  const auto sys = anticrossing();
  const double thr = dynamical_threshold(sys, 0.0, 0.0);
  EXPECT_LT(spectral_abscissa(sys, 0.999 * thr, 0.0, 0.0), 0.0);
  EXPECT_GT(spectral_abscissa(sys, 1.001 * thr, 0.0, 0.0), 0.0);
  EXPECT_LT(thr, stability_double(sys, 0.0).threshold);
}

TEST(Hybridize, DegeneratePointSplitsByTwoJ) {
  const ResonatorParams m(5.0, 0.1, 0.0);
  for (auto form : {HybridizationForm::as_printed, HybridizationForm::standard}) {
    const auto h = hybridize(CoupledSystem(m, m, 0.3), form);
    EXPECT_NEAR(h.omega_plus, 5.3, 1e-15);
    EXPECT_NEAR(h.omega_minus, 4.7, 1e-15);
  }
  const auto h = hybridize(anticrossing());
  EXPECT_NEAR(rad_to_hz(h.omega_plus - h.omega_minus), 43e6, 1.0);
}

TEST(Hybridize, ContinuousInCoupling) {
  const ResonatorParams a(5.2, 0.1, 0.0), b(4.9, 0.1, 0.0);
  for (auto form : {HybridizationForm::as_printed, HybridizationForm::standard}) {
    const auto h0 = hybridize(CoupledSystem(a, b, 0.0), form);
    EXPECT_GT(h0.omega_plus, h0.omega_minus);
    EXPECT_LE(h0.omega_plus, 5.2 + 1e-15);
    EXPECT_GE(h0.omega_minus, 4.9 - 1e-15);
    for (double eps : {1e-4, 1e-6, 1e-8}) {
      const auto h = hybridize(CoupledSystem(a, b, eps), form);
      EXPECT_NEAR(h.omega_plus, h0.omega_plus, 10.0 * eps);
      EXPECT_NEAR(h.omega_minus, h0.omega_minus, 10.0 * eps);
    }
  }
}

TEST(Hybrid, PumpOffIsUnitReflection) {
  HybridModes modes{};
  modes.kappa_plus = modes.kappa_e_plus = 1.0;
  modes.kappa_minus = modes.kappa_e_minus = 0.7;
  modes.half_splitting = 3.0;
  const auto grid = linspace(-6.0, 6.0, 301);
  const auto s = double_mode_gain_hybrid(modes, 0.0, 0.0, 0.0, grid);
  for (double p : s.signal_plus.power()) EXPECT_NEAR(p, 1.0, 1e-12);
  for (double p : s.signal_minus.power()) EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(Hybrid, CollapsesToSingleModeValue) {
  HybridModes modes{};
  modes.kappa_plus = modes.kappa_minus = 1.0;
  modes.kappa_e_plus = modes.kappa_e_minus = 1.0;
  modes.half_splitting = 4.0;
  const double j = modes.half_splitting;
  const auto f = hybrid_factors(modes, 0.25, 0.0, 0.0, j);
  EXPECT_NEAR(std::norm(f.signal_plus), 25.0 / 9.0, 1e-12);
}

TEST(Hybrid, WarnsOutsideRotatingWaveRegime) {
  const auto narrow = anticrossing(2e6);
  const double g = 0.5 * dynamical_threshold(narrow, 0.0, 0.0);
  const auto grid = linspace(-1e8, 1e8, 11);
  EXPECT_FALSE(double_mode_gain_hybrid(narrow, g, 0.0, 0.0, grid).warnings.empty());
  const auto wide = anticrossing(200e6);
  EXPECT_TRUE(double_mode_gain_hybrid(wide, 0.1 * g, 0.0, 0.0, grid).warnings.empty());
}

TEST(Bare, ZeroCouplingReducesToSingleMode) {
  SplitMix64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const ResonatorParams a(0.0, rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.5));
    const ResonatorParams b(0.0, rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.5));
    const double g = rng.uniform(0.0, 0.95) * 0.5 * a.kappa();
    const double da = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, kTwoPi);
    const double w = rng.uniform(-3.0, 3.0);
    const auto bare = bare_mode_factors(CoupledSystem(a, b, 0.0), g, da, 0.3, phi, w);
    const auto single = single_mode_factors(a, g, da, phi, w);
    EXPECT_LT(std::abs(bare.a_signal - single.signal), 1e-9 * std::abs(single.signal));
  }
}

TEST(Bare, PassiveWithoutPump) {
  SplitMix64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const CoupledSystem sys(ResonatorParams(0.0, rng.uniform(0.1, 1.0), rng.uniform(0.0, 0.5)),
                            ResonatorParams(0.0, rng.uniform(0.1, 1.0), rng.uniform(0.0, 0.5)),
                            rng.uniform(0.0, 2.0));
    const auto f = bare_mode_factors(sys, 0.0, rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0,
                                     rng.uniform(-4, 4));
    EXPECT_LE(std::norm(f.a_signal), 1.0 + 1e-9);
  }
}

TEST(Bare, RefusesPumpAboveThreshold) {
  const auto sys = anticrossing();
  const double thr = dynamical_threshold(sys, 0.0, 0.0);
  const std::vector<double> grid = {0.0, 1.0};
  EXPECT_THROW(double_mode_gain_bare(sys, 1.01 * thr, 0.0, 0.0, 0.0, grid), UnstableRegime);
  EXPECT_NO_THROW(double_mode_gain_bare(sys, 0.99 * thr, 0.0, 0.0, 0.0, grid));
}

TEST(Bare, HybridAgreementImprovesWithCoupling) {
  const ResonatorParams ring(0.0, hz_to_rad(19e6), hz_to_rad(4e6));
  const ResonatorParams aux(0.0, hz_to_rad(2e6), hz_to_rad(2e6));
  double prev = 0.0;
  for (double j_hz : {300e6, 150e6, 60e6}) {
    const CoupledSystem sys(ring, aux, hz_to_rad(j_hz));
    const double g = 0.9 * dynamical_threshold(sys, 0.0, 0.0);
    const double j = sys.coupling();
    const auto grid = linspace(-j - hz_to_rad(30e6), -j + hz_to_rad(30e6), 6001);
    const auto bare = double_mode_gain_bare(sys, g, 0.0, 0.0, 0.0, grid).a_signal.power();
    const auto hyb = double_mode_gain_hybrid(sys, g, 0.0, 0.0, grid);
    double pb = 0.0, ph = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      pb = std::max(pb, bare[i]);
      ph = std::max(ph, std::norm(hyb.signal_plus.values()[i] + hyb.signal_minus.values()[i] + 1.0));
    }
    const double disc = std::abs(ph - pb) / pb;
    EXPECT_LT(disc, 0.05);
    EXPECT_GT(disc, prev);
    prev = disc;
  }
}

TEST(RegimeMap, SymmetricSystemCentresDoubleRegime) {
  const auto sys = anticrossing();
  const double centre = 2.0 * sys.mode_a().omega0();
  const auto pumps = linspace(centre - 5.0 * sys.coupling(), centre + 5.0 * sys.coupling(), 401);
  double thr = stability_double(sys, 0.0).threshold;
  for (double wp : pumps) {
    const double d = sys.mode_a().omega0() - 0.5 * wp;
    thr = std::min(thr, dynamical_threshold(sys, d, d));
  }
  const auto map = pump_regime_map(sys, 0.8 * thr, pumps);
  ASSERT_EQ(map.peaks.size(), 3u);
  EXPECT_EQ(map.peaks[0].regime, Regime::single_plus);
  EXPECT_EQ(map.peaks[1].regime, Regime::double_mode);
  EXPECT_EQ(map.peaks[2].regime, Regime::single_minus);
  EXPECT_NEAR(map.peaks[1].pump_omega, centre, 1e-3 * sys.coupling());
  ASSERT_TRUE(map.outer_separation.has_value());
  EXPECT_NEAR(*map.outer_separation / (4.0 * sys.coupling()), 1.0, 0.1);
  EXPECT_TRUE(map.warnings.empty());
}

TEST(RegimeMap, UnstablePointsAreMarked) {
  const auto sys = anticrossing();
  const double centre = 2.0 * sys.mode_a().omega0();
  const auto pumps = linspace(centre - 5.0 * sys.coupling(), centre + 5.0 * sys.coupling(), 41);
  const auto map = pump_regime_map(sys, 1.2 * dynamical_threshold(sys, 0.0, 0.0), pumps);
  EXPECT_FALSE(map.warnings.empty());
  EXPECT_TRUE(std::any_of(map.peak_gain_db.begin(), map.peak_gain_db.end(),
                          [](double v) { return std::isnan(v); }));
}

}  // namespace
}  // namespace kipa
