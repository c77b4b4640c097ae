#include <gtest/gtest.h>

#include "kipa/device.hpp"
#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa {
namespace {

const KineticFilm kFilm(251e-9, 5.86e-3);

TEST(Device, KineticInductance) {
  EXPECT_DOUBLE_EQ(kinetic_inductance(kFilm, 0.0, 0.0), 251e-9);
  EXPECT_NEAR(kinetic_inductance(kFilm, 5.86e-3, 0.0), 502e-9, 1e-21);
  EXPECT_NEAR(kinetic_inductance(kFilm, 1.575e-3, 0.0), 269.13e-9, 0.01e-9);
}

TEST(Device, BiasShift) {
  const double w0 = hz_to_rad(7.4e9);
  EXPECT_EQ(bias_frequency_shift(w0, 0.0, 5.86e-3), 0.0);
  EXPECT_NEAR(rad_to_hz(bias_frequency_shift(w0, 1.575e-3, 5.86e-3)), -267.3e6, 0.05e6);
  EXPECT_NEAR(rad_to_hz(bias_frequency_shift(w0, 5.86e-3, 5.86e-3)), -3.7e9, 1.0);
  EXPECT_THROW(bias_frequency_shift(w0, 1e-3, 0.0), ValidationError);
}

TEST(Device, PumpRateFromPower) {
  const PumpConfig off(1.0, 0.0, 1.575e-3, PowerDrive{0.0, 50.0, 1.0});
  EXPECT_EQ(pump_rate(off, kFilm, hz_to_rad(7.155e9)), 0.0);

  const PumpConfig on(1.0, 0.0, 1.575e-3, PowerDrive{dbm_to_watt(-23.8), 50.0, 1.0});
  EXPECT_NEAR(rad_to_hz(pump_rate(on, kFilm, hz_to_rad(7.155e9))), 33.5e6, 0.1e6);
}

TEST(Device, DirectPumpPassesThrough) {
  const PumpConfig p(1.0, 0.0, 0.0, DirectDrive{hz_to_rad(15.9e6)});
  EXPECT_DOUBLE_EQ(rad_to_hz(pump_rate(p, kFilm, 1.0)), 15.9e6);
}

TEST(Device, PumpCurrentMatchedDrive) {
  EXPECT_NEAR(pump_current(PowerDrive{1e-3, 50.0, 1.0}), std::sqrt(2e-3 / 50.0), 1e-15);
  EXPECT_NEAR(pump_current(PowerDrive{1e-3, 50.0, 0.5}), 0.5 * std::sqrt(2e-3 / 50.0), 1e-15);
}

}  // namespace
}  // namespace kipa
