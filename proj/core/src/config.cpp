#include "twisted/config.hpp"

#include <string>

#include "json.hpp"

namespace twisted {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

LabConfig parse_lab_config(std::string_view json_text, const LabConfig& defaults) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config fragment must be a JSON object");

  LabConfig cfg = defaults;
  for (const auto& [key, value] : j.items()) {
    if (key == "B_tesla") {
      cfg.lab.B_tesla = number_field(j, "B_tesla");
    } else if (key == "kinetic_keV") {
      cfg.lab.kinetic_eV = number_field(j, "kinetic_keV") * 1e3;
    } else if (key == "w0_nm") {
      cfg.lab.w0_m = to_metres(number_field(j, "w0_nm"));
    } else if (key == "spin") {
      if (!value.is_string()) throw ConfigError("config key 'spin' must be \"+\" or \"-\"");
      const auto s = value.get<std::string>();
      if (s == "+") {
        cfg.spin = Spin::Up;
      } else if (s == "-") {
        cfg.spin = Spin::Down;
      } else {
        throw ConfigError("config key 'spin' must be \"+\" or \"-\", got \"" + s + "\"");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  try {
    (void)geometry_from_lab(cfg.lab);
  } catch (const InvalidLabInput& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace twisted
