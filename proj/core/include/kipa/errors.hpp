#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kipa {

enum class ErrorCode {
  validation,
  unstable_regime,
  pole_at_frequency,
  singular,
  not_settled,
  not_converged,
  ill_conditioned,
  unstable_fit,
  non_physical,
  no_peak,
  parse,
  schema_mismatch,
  unit,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Numeric failures (unstable, not converged, ...) as opposed to bad input.
bool is_numeric_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode Code>
class CodedError : public Error {
 public:
  explicit CodedError(const std::string& message) : Error(Code, message) {}
};

using ValidationError = CodedError<ErrorCode::validation>;
using UnstableRegime = CodedError<ErrorCode::unstable_regime>;
using PoleAtFrequency = CodedError<ErrorCode::pole_at_frequency>;
using SingularAt = CodedError<ErrorCode::singular>;
using NotSettled = CodedError<ErrorCode::not_settled>;
using NotConverged = CodedError<ErrorCode::not_converged>;
using IllConditioned = CodedError<ErrorCode::ill_conditioned>;
using UnstableFit = CodedError<ErrorCode::unstable_fit>;
using NonPhysical = CodedError<ErrorCode::non_physical>;
using NoPeak = CodedError<ErrorCode::no_peak>;
using ParseError = CodedError<ErrorCode::parse>;
using SchemaMismatch = CodedError<ErrorCode::schema_mismatch>;
using UnitError = CodedError<ErrorCode::unit>;
using IoError = CodedError<ErrorCode::io>;

}  // namespace kipa
