#include <gtest/gtest.h>

#include <cmath>

#include "kipa/errors.hpp"
#include "kipa/noise.hpp"
#include "kipa/random.hpp"
#include "kipa/units.hpp"

namespace kipa {
namespace {

const double kOmega = hz_to_rad(7.155e9);

TEST(Noise, ThermalOccupancy) {
  EXPECT_EQ(thermal_occupancy(kOmega, 0.0), 0.0);
  EXPECT_NEAR(thermal_occupancy(kOmega, 0.1), 0.0333, 5e-5);
  const double rj = constants::k_boltzmann * 4.5 / (constants::hbar * kOmega);
  EXPECT_NEAR(thermal_occupancy(kOmega, 4.5), rj, 0.05 * rj);
  EXPECT_NEAR(thermal_occupancy(kOmega, 4.5), 12.6, 0.1);
}

TEST(Noise, CothIdentity) {
  for (double t : {0.01, 0.1, 1.0, 10.0}) {
    EXPECT_NEAR(half_coth(kOmega, t), thermal_occupancy(kOmega, t) + 0.5,
                4e-16 * (thermal_occupancy(kOmega, t) + 0.5));
  }
  EXPECT_EQ(half_coth(kOmega, 0.0), 0.5);
}

NoiseChain anchor_chain() {
  NoiseChain c;
  c.gain_k = 1000.0;
  c.n_h = 10.0;
  c.eta = 0.9;
  c.device_temperature = 0.1;
  c.omega = kOmega;
  return c;
}

TEST(Noise, AddedNoiseAnchor) {
  const auto a = added_noise(anchor_chain());
  EXPECT_NEAR(a.n_k, 0.11852, 5e-5);
  EXPECT_NEAR(a.n_add, 0.6612, 5e-4);
}

TEST(Noise, QuantumLimitForLosslessStage) {
  NoiseChain c;
  c.gain_k = 1e9;
  c.omega = kOmega;
  EXPECT_NEAR(added_noise(c).n_add, 0.5, 1e-6);
}

TEST(Noise, UnityGainPassesChainNoise) {
  auto c = anchor_chain();
  c.gain_k = 1.0;
  EXPECT_DOUBLE_EQ(added_noise(c).n_add, c.n_h);
}

TEST(Noise, QuantumFloorHolds) {
  SplitMix64 rng(9);
  for (int i = 0; i < 500; ++i) {
    NoiseChain c;
    c.gain_k = std::pow(10.0, rng.uniform(0.0, 6.0));
    c.gain_h = std::pow(10.0, rng.uniform(0.0, 8.0));
    c.n_h = rng.uniform(0.5, 50.0);
    c.eta = rng.uniform(0.05, 1.0);
    c.device_temperature = rng.uniform(0.0, 1.0);
    c.omega = kOmega;
    EXPECT_GE(added_noise(c).n_add, 0.5 * (c.gain_k - 1.0) / c.gain_k - 1e-12);
  }
}

TEST(Noise, TotalNoiseAnchorAndMonotone) {
  NoiseChain c;
  c.gain_k = 1e6;
  c.omega = kOmega;
  // Pick n_h so that the chain sums to n_add = 0.661.
  c.n_h = (0.661 - (c.gain_k - 1.0) / c.gain_k * 0.5) * c.gain_k;
  ASSERT_NEAR(added_noise(c).n_add, 0.661, 1e-12);
  EXPECT_NEAR(total_noise_psd(c, 0.1), 5.66e-18, 0.01e-18);
  EXPECT_NEAR(total_noise_psd(c, 0.0), constants::hbar * kOmega * 1e6 * (0.5 + 0.661), 1e-30);
  double prev = 0.0;
  for (double t = 0.0; t < 2.0; t += 0.05) {
    const double v = total_noise_psd(c, t);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(OnOff, RoundTrip) {
  const OnOffSetup setup{1e6, 1000.0, 1e8, 1.0, kOmega, 0.02};
  for (double nk : {0.0, 0.82, 1.5, 4.0}) {
    const auto s = pump_onoff_forward(setup, nk, 0.5);
    EXPECT_NEAR(pump_onoff_nk(s.s_on, s.s_off, setup), nk, 1e-9);
    EXPECT_NEAR(pump_onoff_nk_exact(s.s_on, s.s_off, setup, 0.5), nk, 1e-9);
  }
}

TEST(OnOff, ExactInversionWithLossyChain) {
  const OnOffSetup setup{1e6, 50.0, 1e3, 0.7, kOmega, 0.05};
  const auto s = pump_onoff_forward(setup, 1.5, 20.0);
  EXPECT_NEAR(pump_onoff_nk_exact(s.s_on, s.s_off, setup, 20.0), 1.5, 1e-9);
}

TEST(OnOff, EqualSpectraAreRejected) {
  const OnOffSetup near_unity{1e6, 1.0 + 1e-9, 1e8, 1.0, kOmega, 0.02};
  EXPECT_THROW(pump_onoff_nk(1e-15, 1e-15, near_unity), Error);
  const OnOffSetup unity{1e6, 1.0, 1e8, 1.0, kOmega, 0.02};
  EXPECT_THROW(pump_onoff_nk(1e-15, 1e-15, unity), ValidationError);
}

TEST(OnOff, NegativeResultIsNonPhysical) {
  const OnOffSetup setup{1e6, 1000.0, 1e8, 1.0, kOmega, 0.02};
  const auto s = pump_onoff_forward(setup, 0.0, 0.5);
  EXPECT_THROW(pump_onoff_nk(0.9 * s.s_on, s.s_off, setup), NonPhysical);
}

TEST(Noise, ChainInversion) {
  const auto c = anchor_chain();
  const auto a = added_noise(c);
  const double nbar = thermal_occupancy(c.omega, c.device_temperature);
  EXPECT_NEAR(nk_from_nadd(a.n_add, c.gain_k, c.n_h, nbar), a.n_k, 1e-12);
}

}  // namespace
}  // namespace kipa
