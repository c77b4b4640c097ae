#include "kipa/io/config.hpp"

#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa::io {

namespace {

using nlohmann::json;

// Unit suffixes accepted at the boundary and the quantities that take them.
const std::map<std::string, std::set<std::string>>& known_quantities() {
  static const std::map<std::string, std::set<std::string>> q = {
      {"l0", {"h"}},           {"i_star", {"a"}},    {"l_sheet", {"h_per_sq"}},
      {"f0", {"hz"}},          {"kappa_e", {"hz"}},  {"kappa_i", {"hz"}},
      {"j", {"hz"}},           {"f", {"hz"}},        {"phi", {"rad"}},
      {"idc", {"a"}},          {"g", {"hz"}},        {"power", {"w", "dbm"}},
      {"z_ref", {"ohm"}},
  };
  return q;
}

class Section {
 public:
  Section(const json& obj, std::string path, std::set<std::string> allowed)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw SchemaMismatch(path_ + " must be a JSON object");
    for (const auto& [key, value] : obj_.items()) {
      if (allowed.count(key)) continue;
      check_unknown(key);
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double number(const std::string& key) const {
    if (!obj_.contains(key)) throw SchemaMismatch("missing required field " + path_ + "." + key);
    const auto& v = obj_.at(key);
    if (!v.is_number()) throw SchemaMismatch(path_ + "." + key + " must be a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (!obj_.contains(key)) return std::nullopt;
    return number(key);
  }

  const json& object(const std::string& key) const {
    if (!obj_.contains(key)) throw SchemaMismatch("missing required section " + path_ + "." + key);
    return obj_.at(key);
  }

 private:
  void check_unknown(const std::string& key) const {
    const std::string where = path_.empty() ? key : path_ + "." + key;
    if (key.rfind("kerr", 0) == 0) {
      throw SchemaMismatch("field " + where +
                           " is out of scope: the Kerr term is neglected by this model");
    }
    const auto& q = known_quantities();
    if (q.count(key)) {
      throw UnitError("field " + where + " has no unit suffix (expected " + key + "_" +
                      *q.at(key).begin() + ")");
    }
    for (const auto& [base, units] : q) {
      if (key.size() > base.size() + 1 && key.compare(0, base.size() + 1, base + "_") == 0) {
        const std::string unit = key.substr(base.size() + 1);
        if (!units.count(unit)) {
          throw UnitError("field " + where + " uses unsupported unit '" + unit + "'");
        }
      }
    }
    throw SchemaMismatch("unknown field " + where);
  }

  const json& obj_;
  std::string path_;
};

ResonatorParams resonator(const json& j, const std::string& name) {
  const Section s(j, name, {"f0_hz", "kappa_e_hz", "kappa_i_hz"});
  return ResonatorParams(hz_to_rad(s.number("f0_hz")), hz_to_rad(s.number("kappa_e_hz")),
                         hz_to_rad(s.number("kappa_i_hz")));
}

KineticFilm film(const json& j) {
  const Section s(j, "film", {"l0_h", "i_star_a", "l_sheet_h_per_sq"});
  return KineticFilm(s.number("l0_h"), s.number("i_star_a"), s.optional_number("l_sheet_h_per_sq"));
}

PumpConfig pump(const json& j) {
  const Section s(j, "pump",
                  {"f_hz", "phi_rad", "idc_a", "g_hz", "power_w", "power_dbm", "z_ref_ohm", "cal"});
  const int drives = int(s.has("g_hz")) + int(s.has("power_w")) + int(s.has("power_dbm"));
  if (drives != 1) {
    throw SchemaMismatch("pump needs exactly one of g_hz, power_w, power_dbm");
  }
  PumpDrive drive;
  if (s.has("g_hz")) {
    if (s.has("z_ref_ohm") || s.has("cal")) {
      throw SchemaMismatch("pump.z_ref_ohm and pump.cal only apply to a power drive");
    }
    drive = DirectDrive{hz_to_rad(s.number("g_hz"))};
  } else {
    const double watts = s.has("power_w") ? s.number("power_w") : dbm_to_watt(s.number("power_dbm"));
    drive = PowerDrive{watts, s.number("z_ref_ohm"), s.number("cal")};
  }
  return PumpConfig(hz_to_rad(s.number("f_hz")), s.number("phi_rad"), s.number("idc_a"), drive);
}

HybridizationForm conventions(const json& root) {
  if (!root.contains("conventions")) return HybridizationForm::as_printed;
  const auto& c = root.at("conventions");
  if (!c.is_object()) throw SchemaMismatch("conventions must be a JSON object");
  for (const auto& [key, value] : c.items()) {
    if (key != "hybridization_form") throw SchemaMismatch("unknown field conventions." + key);
  }
  if (!c.contains("hybridization_form")) return HybridizationForm::as_printed;
  const auto& v = c.at("hybridization_form");
  if (v == "as_printed") return HybridizationForm::as_printed;
  if (v == "standard") return HybridizationForm::standard;
  throw SchemaMismatch("conventions.hybridization_form must be 'as_printed' or 'standard'");
}

}  // namespace

const char* to_string(HybridizationForm form) noexcept {
  return form == HybridizationForm::standard ? "standard" : "as_printed";
}

DeviceConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  const Section top(root, "", {"film", "ring", "auxiliary", "j_hz", "pump", "conventions"});
  const double j = top.number("j_hz");
  if (!(j >= 0.0)) throw ValidationError("j_hz must be >= 0");
  return DeviceConfig{film(top.object("film")),
                      resonator(top.object("ring"), "ring"),
                      resonator(top.object("auxiliary"), "auxiliary"),
                      hz_to_rad(j),
                      pump(top.object("pump")),
                      conventions(root)};
}

DeviceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace kipa::io
