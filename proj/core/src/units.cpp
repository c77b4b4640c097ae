#include "kipa/units.hpp"

#include <cmath>

namespace kipa {

double to_db(double linear_power) { return 10.0 * std::log10(linear_power); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watt(double dbm) { return 1e-3 * from_db(dbm); }

double watt_to_dbm(double watt) { return to_db(watt / 1e-3); }

}  // namespace kipa
