#include "kipa/io/result.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kipa/errors.hpp"
#include "kipa/io/trace_csv.hpp"

namespace kipa::io {

namespace {

using ordered = nlohmann::ordered_json;

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

ordered encode(const OutputValue& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    return *d;
  }
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

}  // namespace

bool Output::operator==(const Output& o) const {
  if (name != o.name || unit != o.unit || value.index() != o.value.index()) return false;
  if (const auto* d = std::get_if<double>(&value)) return same_double(*d, std::get<double>(o.value));
  return value == o.value;
}

ResultRecord::ResultRecord(std::string operation) : operation_(std::move(operation)) {}

ResultRecord& ResultRecord::add(std::string name, double value, std::string unit) {
  if (unit.empty()) throw ValidationError("numeric output '" + name + "' needs a unit");
  outputs_.push_back({std::move(name), value, std::move(unit)});
  return *this;
}

ResultRecord& ResultRecord::add(std::string name, bool value) {
  outputs_.push_back({std::move(name), value, ""});
  return *this;
}

ResultRecord& ResultRecord::add(std::string name, std::string value) {
  outputs_.push_back({std::move(name), std::move(value), ""});
  return *this;
}

ResultRecord& ResultRecord::warn(std::string message) {
  warnings_.push_back(std::move(message));
  return *this;
}

const Output& ResultRecord::output(std::string_view name) const {
  for (const auto& o : outputs_) {
    if (o.name == name) return o;
  }
  throw std::out_of_range("no output named " + std::string(name));
}

std::string ResultRecord::to_json() const {
  ordered j;
  j["operation"] = operation_;
  j["inputs_digest"] = inputs_digest_;
  ordered outs = ordered::array();
  for (const auto& o : outputs_) {
    ordered e;
    e["name"] = o.name;
    e["value"] = encode(o.value);
    if (!o.unit.empty()) e["unit"] = o.unit;
    outs.push_back(std::move(e));
  }
  j["outputs"] = std::move(outs);
  j["warnings"] = warnings_;
  return j.dump(2) + "\n";
}

ResultRecord ResultRecord::from_json(std::string_view text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("result record is not valid JSON: ") + e.what());
  }
  try {
    ResultRecord r(j.at("operation").get<std::string>());
    r.inputs_digest_ = j.at("inputs_digest").get<std::string>();
    for (const auto& e : j.at("outputs")) {
      std::string name = e.at("name").get<std::string>();
      const std::string unit = e.contains("unit") ? e.at("unit").get<std::string>() : "";
      const auto& v = e.at("value");
      if (v.is_boolean()) {
        r.add(std::move(name), v.get<bool>());
      } else if (v.is_number()) {
        r.add(std::move(name), v.get<double>(), unit);
      } else if (!unit.empty()) {
        const std::string s = v.get<std::string>();
        double d = std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") d = std::numeric_limits<double>::infinity();
        else if (s == "-inf") d = -std::numeric_limits<double>::infinity();
        else if (s != "nan") throw SchemaMismatch("numeric output '" + name + "' holds text");
        r.add(std::move(name), d, unit);
      } else {
        r.add(std::move(name), v.get<std::string>());
      }
    }
    for (const auto& w : j.at("warnings")) r.warn(w.get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed result record: ") + e.what());
  }
}

bool ResultRecord::operator==(const ResultRecord& o) const {
  return operation_ == o.operation_ && inputs_digest_ == o.inputs_digest_ &&
         outputs_ == o.outputs_ && warnings_ == o.warnings_;
}

std::string digest(std::string_view canonical_inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_inputs) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

void write_result(const ResultRecord& record, const std::filesystem::path& path) {
  write_text(path, record.to_json());
}

ResultRecord read_result(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open result file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ResultRecord::from_json(ss.str());
}

}  // namespace kipa::io
