#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kipa::io {

using OutputValue = std::variant<double, bool, std::string>;

struct Output {
  std::string name;
  OutputValue value;
  std::string unit;  // never empty for numeric values; "1" for dimensionless

  bool operator==(const Output&) const;
};

/// Outcome of one operation, serialised with a fixed field order.
class ResultRecord {
 public:
  explicit ResultRecord(std::string operation);

  /// Throws ValidationError when unit is empty.
  ResultRecord& add(std::string name, double value, std::string unit);
  ResultRecord& add(std::string name, bool value);
  ResultRecord& add(std::string name, std::string value);
  ResultRecord& add(std::string name, const char* value) { return add(std::move(name), std::string(value)); }
  ResultRecord& warn(std::string message);
  void set_inputs_digest(std::string digest) { inputs_digest_ = std::move(digest); }

  const std::string& operation() const noexcept { return operation_; }
  const std::string& inputs_digest() const noexcept { return inputs_digest_; }
  const std::vector<Output>& outputs() const noexcept { return outputs_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Throws std::out_of_range for an unknown name.
  const Output& output(std::string_view name) const;

  /// Two-space indented JSON. Non-finite numbers are written as the strings
  /// "inf", "-inf" or "nan".
  std::string to_json() const;
  static ResultRecord from_json(std::string_view text);

  bool operator==(const ResultRecord&) const;

 private:
  std::string operation_;
  std::string inputs_digest_;
  std::vector<Output> outputs_;
  std::vector<std::string> warnings_;
};

/// 64-bit FNV-1a, rendered as "fnv1a64:" and 16 hex digits.
std::string digest(std::string_view canonical_inputs);

void write_result(const ResultRecord& record, const std::filesystem::path& path);
ResultRecord read_result(const std::filesystem::path& path);

}  // namespace kipa::io
