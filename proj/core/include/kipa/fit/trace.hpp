#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kipa/types.hpp"

namespace kipa::fit {

enum class TraceKind { reflection, gain_db, noise_psd, bias_shift };

const char* to_string(TraceKind kind) noexcept;
std::optional<TraceKind> parse_trace_kind(std::string_view text) noexcept;

/// Measured curve. x is Hz for reflection and gain_db, kelvin for noise_psd,
/// ampere for bias_shift. Reflection traces carry complex y, the rest real.
class Trace {
 public:
  /// Throws ValidationError for a complex kind, unequal lengths or x that is
  /// not strictly increasing.
  Trace(TraceKind kind, std::vector<double> x, std::vector<double> y);
  Trace(std::vector<double> x, std::vector<complex> y);

  /// Sorts the points by x first; duplicates are still rejected.
  static Trace from_unsorted(TraceKind kind, std::vector<double> x, std::vector<double> y);
  static Trace from_unsorted(std::vector<double> x, std::vector<complex> y);

  TraceKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_real_; }
  std::span<const complex> y_complex() const noexcept { return y_complex_; }
  bool is_complex() const noexcept { return kind_ == TraceKind::reflection; }

 private:
  void check_x() const;

  TraceKind kind_;
  std::vector<double> x_;
  std::vector<double> y_real_;
  std::vector<complex> y_complex_;
};

}  // namespace kipa::fit
