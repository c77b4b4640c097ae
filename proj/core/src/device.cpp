#include "kipa/device.hpp"

#include <cmath>

#include "kipa/errors.hpp"

namespace kipa {

double kinetic_inductance(const KineticFilm& film, double i_dc, double i_rf) {
  const double is = film.i_star();
  const double x = i_dc / is;
  const double y = i_rf / is;
  return film.l0() * (1.0 + x * x + 2.0 * x * y + y * y);
}

double bias_frequency_shift(double omega0, double i_dc, double i_star) {
  if (!(i_star > 0.0)) throw ValidationError("I* must be > 0");
  const double x = i_dc / i_star;
  return -0.5 * omega0 * x * x;
}

double pump_current(const PowerDrive& drive) {
  if (drive.power_w < 0.0) throw ValidationError("pump power must be >= 0");
  if (!(drive.z_ref_ohm > 0.0)) throw ValidationError("Z_ref must be > 0");
  return drive.calibration * std::sqrt(2.0 * drive.power_w / drive.z_ref_ohm);
}

double pump_rate(const PumpConfig& pump, const KineticFilm& film, double omega0) {
  if (const auto* direct = std::get_if<DirectDrive>(&pump.drive())) return direct->g;
  const double i_p = pump_current(std::get<PowerDrive>(pump.drive()));
  const double is = film.i_star();
  return std::abs(pump.i_dc() * i_p * omega0 / (4.0 * is * is));
}

}  // namespace kipa
