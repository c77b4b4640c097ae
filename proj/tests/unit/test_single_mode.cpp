#include <gtest/gtest.h>

#include <cmath>

#include "kipa/errors.hpp"
#include "kipa/random.hpp"
#include "kipa/single_mode.hpp"
#include "kipa/units.hpp"

namespace kipa {
namespace {

const ResonatorParams kLossless(0.0, 1.0, 0.0);

TEST(SingleMode, PumpOffIsUnitReflection) {
  for (double w : {-3.0, -0.2, 0.0, 0.7, 5.0}) {
    const auto f = single_mode_factors(kLossless, 0.0, 0.0, 0.0, w);
    EXPECT_NEAR(std::norm(f.signal), 1.0, 1e-15);
    EXPECT_EQ(std::abs(f.idler), 0.0);
  }
}

TEST(SingleMode, QuarterThresholdValues) {
  const auto f = single_mode_factors(kLossless, 0.25, 0.0, 0.0, 0.0);
  EXPECT_NEAR(std::norm(f.signal), 25.0 / 9.0, 1e-14);
  EXPECT_NEAR(std::norm(f.idler), 16.0 / 9.0, 1e-14);
  EXPECT_NEAR(to_db(std::norm(f.signal)), 4.437, 1e-3);
  EXPECT_NEAR(on_resonance_gain(kLossless, 0.25), 25.0 / 9.0, 1e-14);
  EXPECT_DOUBLE_EQ(on_resonance_gain(kLossless, 0.0), 1.0);
}

TEST(SingleMode, FortyThreeDecibelAnchor) {
  const double kappa = hz_to_rad(32e6);
  const ResonatorParams res(0.0, 0.9 * kappa, 0.1 * kappa);
  const auto f = single_mode_factors(res, 0.99365 * 0.5 * kappa, 0.0, 0.0, 0.0);
  EXPECT_NEAR(to_db(std::norm(f.signal)), 43.0, 0.2);
}

TEST(SingleMode, GainDivergesTowardThreshold) {
  double prev = 0.0;
  for (double x = 0.0; x < 0.999; x += 0.037) {
    const double g = on_resonance_gain(kLossless, 0.5 * x);
    EXPECT_GT(g, prev);
    prev = g;
  }
  EXPECT_GT(on_resonance_gain(kLossless, 0.499), on_resonance_gain(kLossless, 0.49));
}

TEST(SingleMode, LosslessIdlerIdentity) {
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const double g = rng.uniform(0.0, 0.49);
    const double w = rng.uniform(-3.0, 3.0);
    const double d = rng.uniform(-1.0, 1.0);
    const auto f = single_mode_factors(kLossless, g, d, rng.uniform(0.0, kTwoPi), w);
    const double scale = std::max(1.0, std::norm(f.signal));
    EXPECT_NEAR(std::norm(f.idler), std::norm(f.signal) - 1.0, 1e-12 * scale);
  }
}

TEST(SingleMode, SymmetricSpectrumAtZeroDetuning) {
  const ResonatorParams res(0.0, 0.8, 0.2);
  for (double w : {0.1, 0.4, 1.3}) {
    const auto p = single_mode_factors(res, 0.4, 0.0, 0.3, w);
    const auto m = single_mode_factors(res, 0.4, 0.0, 0.3, -w);
    EXPECT_NEAR(std::abs(p.signal), std::abs(m.signal), 1e-13);
  }
}

TEST(SingleMode, GainRefusesUnstablePump) {
  const std::vector<double> grid = {-1.0, 0.0, 1.0};
  EXPECT_THROW(single_mode_gain(kLossless, 0.5, 0.0, 0.0, grid), UnstableRegime);
  EXPECT_THROW(single_mode_gain(kLossless, -0.1, 0.0, 0.0, grid), ValidationError);
  EXPECT_NO_THROW(single_mode_gain(kLossless, 0.49, 0.0, 0.0, grid));
}

TEST(SingleMode, Stability) {
  const ResonatorParams res(0.0, 0.7, 0.3);
  const auto a = stability_single(res, 0.49);
  EXPECT_TRUE(a.stable);
  EXPECT_NEAR(a.margin, 0.01, 1e-15);
  const auto b = stability_single(res, 0.5);
  EXPECT_FALSE(b.stable);
  EXPECT_EQ(b.margin, 0.0);
  const auto c = stability_single(res, 0.0);
  EXPECT_TRUE(c.stable);
  EXPECT_DOUBLE_EQ(c.margin, 0.5);
}

TEST(PhaseSensitive, PumpOffIsFlat) {
  for (double p = 0.0; p < kTwoPi; p += 0.3) EXPECT_NEAR(phase_sensitive_gain(kLossless, 0.0, p), 1.0, 1e-15);
}

TEST(PhaseSensitive, LosslessProductIsUnity) {
  for (double x : {0.05, 0.3, 0.8, 0.99}) {
    const auto e = phase_sensitive_extrema(kLossless, 0.5 * x);
    EXPECT_NEAR(e.gain_max * e.gain_min, 1.0, 1e-9);
  }
}

TEST(PhaseSensitive, ExtremaBoundTheSweep) {
  const ResonatorParams res(0.0, 0.9, 0.1);
  const auto e = phase_sensitive_extrema(res, 0.45);
  EXPECT_NEAR(phase_sensitive_gain(res, 0.45, e.phi_max), e.gain_max, 1e-9 * e.gain_max);
  EXPECT_NEAR(phase_sensitive_gain(res, 0.45, e.phi_min), e.gain_min, 1e-9);
  for (double p = 0.0; p < kTwoPi; p += 0.01) {
    const double v = phase_sensitive_gain(res, 0.45, p);
    EXPECT_LE(v, e.gain_max * (1 + 1e-12));
    EXPECT_GE(v, e.gain_min * (1 - 1e-12));
  }
}

TEST(PhaseSensitive, LossyNearThresholdFavoursAmplification) {
  const ResonatorParams res(0.0, 0.9, 0.1);
  const auto e = phase_sensitive_extrema(res, 0.5 * 0.999);
  EXPECT_GE(to_db(e.gain_max), 50.0);
  EXPECT_GE(to_db(e.gain_min), -50.0);
  EXPECT_GT(to_db(e.gain_max) + to_db(e.gain_min), 0.0);
}

TEST(Susceptibility, PumpOffDiagonal) {
  const ResonatorParams res(0.0, 0.6, 0.4);
  const auto chi = susceptibility(res, 0.0, 0.0, 0.0);
  EXPECT_NEAR(chi[0][0].real(), 2.0 / res.kappa(), 1e-15);
  EXPECT_NEAR(chi[1][1].real(), 2.0 / res.kappa(), 1e-15);
  EXPECT_EQ(std::abs(chi[0][1]), 0.0);
}

TEST(Susceptibility, ThrowsAtRealPole) {
  EXPECT_THROW(susceptibility(kLossless, 0.5, 0.0, 0.0), PoleAtFrequency);
}

}  // namespace
}  // namespace kipa
