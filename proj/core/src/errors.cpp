#include "kipa/errors.hpp"

namespace kipa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "ValidationError";
    case ErrorCode::unstable_regime: return "UnstableRegime";
    case ErrorCode::pole_at_frequency: return "PoleAtFrequency";
    case ErrorCode::singular: return "SingularAt";
    case ErrorCode::not_settled: return "NotSettled";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::ill_conditioned: return "IllConditioned";
    case ErrorCode::unstable_fit: return "UnstableFit";
    case ErrorCode::non_physical: return "NonPhysical";
    case ErrorCode::no_peak: return "NoPeak";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::unit: return "UnitError";
    case ErrorCode::io: return "IoError";
  }
  return "Error";
}

bool is_numeric_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::unstable_regime:
    case ErrorCode::pole_at_frequency:
    case ErrorCode::singular:
    case ErrorCode::not_settled:
    case ErrorCode::not_converged:
    case ErrorCode::ill_conditioned:
    case ErrorCode::unstable_fit:
    case ErrorCode::non_physical:
    case ErrorCode::no_peak:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace kipa
