#pragma once

#include "kipa/types.hpp"

namespace kipa {

/// L0 [1 + (I_dc/I*)^2 + 2 I_rf I_dc / I*^2 + (I_rf/I*)^2], in henry.
double kinetic_inductance(const KineticFilm& film, double i_dc, double i_rf);

/// Quadratic resonance shift under DC bias, -(omega0/2)(I_dc/I*)^2. Never positive.
double bias_frequency_shift(double omega0, double i_dc, double i_star);

/// Peak pump current cal * sqrt(2 P / Z_ref).
double pump_current(const PowerDrive& drive);

/// Three-wave-mixing rate |I_dc I_p omega0 / (4 I*^2)|. A direct drive is
/// passed through unchanged.
double pump_rate(const PumpConfig& pump, const KineticFilm& film, double omega0);

}  // namespace kipa
