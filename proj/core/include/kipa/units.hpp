#pragma once

#include <numbers>

// All internal rates are angular (rad/s). Hz only appears at file and CLI
// boundaries, converted with the helpers below.
namespace kipa {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace constants {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
}  // namespace constants

constexpr double hz_to_rad(double f_hz) noexcept { return kTwoPi * f_hz; }
constexpr double rad_to_hz(double omega) noexcept { return omega / kTwoPi; }

// Power quantities only: 10*log10.
double to_db(double linear_power);
double from_db(double db);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

}  // namespace kipa
