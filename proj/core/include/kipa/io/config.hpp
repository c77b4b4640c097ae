#pragma once

#include <filesystem>
#include <string_view>

#include "kipa/double_mode.hpp"
#include "kipa/types.hpp"

namespace kipa::io {

/// Device description with every rate already converted to rad/s.
struct DeviceConfig {
  KineticFilm film;
  ResonatorParams ring;
  ResonatorParams auxiliary;
  double coupling_j;  // rad/s
  PumpConfig pump;
  HybridizationForm hybridization_form = HybridizationForm::as_printed;

  CoupledSystem coupled() const { return CoupledSystem(ring, auxiliary, coupling_j); }
};

/// Reads the JSON device description. Keys carry their unit (`kappa_e_hz`,
/// `idc_a`, ...). Throws ParseError for malformed JSON, UnitError for a key
/// without a known unit suffix, SchemaMismatch for unknown or missing keys
/// and ValidationError when a value breaks a type invariant.
DeviceConfig parse_config(std::string_view json_text);
DeviceConfig load_config(const std::filesystem::path& path);

const char* to_string(HybridizationForm form) noexcept;

}  // namespace kipa::io
