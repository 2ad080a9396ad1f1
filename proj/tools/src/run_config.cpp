#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twisted::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kLabKeys{"B_tesla", "kinetic_keV", "w0_nm", "spin"};

template <class T>
T typed(const json& v, const std::string& key) {
  if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  } else if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  } else {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  }
  return v.get<T>();
}

FamilySelector family_from(const std::string& s) {
  if (s == "general") return FamilySelector::General;
  if (s == "landau") return FamilySelector::Landau;
  if (s == "free") return FamilySelector::Free;
  throw ConfigError("family must be one of general, landau, free; got '" + s + "'");
}

}  // namespace

const char* to_string(FamilySelector f) {
  switch (f) {
    case FamilySelector::General: return "general";
    case FamilySelector::Landau: return "landau";
    case FamilySelector::Free: return "free";
  }
  return "general";
}

BeamGeometry RunConfig::geometry() const {
  try {
    return geometry_from_lab(lab.lab);
  } catch (const InvalidLabInput& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(const std::string& json_text, RunConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  json lab = json::object();
  for (const auto& [key, v] : j.items()) {
    if (kLabKeys.count(key)) {
      lab[key] = v;
    } else if (key == "n") {
      base.n = typed<int>(v, key);
    } else if (key == "ell") {
      base.ell = typed<int>(v, key);
    } else if (key == "family") {
      base.family = family_from(typed<std::string>(v, key));
    } else if (key == "z_over_zm") {
      base.z_over_zm = typed<double>(v, key);
    } else if (key == "dz_over_zm") {
      base.dz_over_zm = typed<double>(v, key);
    } else if (key == "grid_points") {
      base.grid_points = typed<int>(v, key);
    } else if (key == "z_end_over_zm") {
      base.z_end_over_zm = typed<double>(v, key);
    } else if (key == "snapshots") {
      base.snapshots = typed<int>(v, key);
    } else if (key == "periods") {
      base.periods = typed<double>(v, key);
    } else if (key == "samples_per_period") {
      base.samples_per_period = typed<int>(v, key);
    } else if (key == "n_max") {
      base.n_max = typed<int>(v, key);
    } else if (key == "w0_over_wm") {
      base.w0_over_wm = typed<double>(v, key);
    } else if (key == "out") {
      base.out = typed<std::string>(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  base.lab = parse_lab_config(lab.dump(), base.lab);
  return base;
}

void apply_overrides(RunConfig& cfg, const FlagOverrides& f) {
  if (f.B_tesla) cfg.lab.lab.B_tesla = *f.B_tesla;
  if (f.kinetic_keV) cfg.lab.lab.kinetic_eV = *f.kinetic_keV * 1e3;
  if (f.w0_nm) cfg.lab.lab.w0_m = to_metres(*f.w0_nm);
  if (f.n) cfg.n = *f.n;
  if (f.ell) cfg.ell = *f.ell;
  if (f.spin) {
    if (*f.spin == "+") {
      cfg.lab.spin = Spin::Up;
    } else if (*f.spin == "-") {
      cfg.lab.spin = Spin::Down;
    } else {
      throw ConfigError("--spin must be + or -");
    }
  }
  if (f.dz_over_zm) cfg.dz_over_zm = *f.dz_over_zm;
  if (f.grid_points) cfg.grid_points = *f.grid_points;
  if (f.out) cfg.out = *f.out;
}

void validate(const RunConfig& cfg) {
  (void)cfg.geometry();
  if (cfg.n < 0) throw ConfigError("n must be non-negative");
  if (!(cfg.dz_over_zm > 0.0)) throw ConfigError("dz_over_zm must be positive");
  if (cfg.grid_points < 16) throw ConfigError("grid_points must be at least 16");
  if (cfg.snapshots < 0) throw ConfigError("snapshots must be non-negative");
  if (!(cfg.periods > 0.0)) throw ConfigError("periods must be positive");
  if (cfg.samples_per_period < 1) throw ConfigError("samples_per_period must be positive");
  if (cfg.n_max < 0) throw ConfigError("n_max must be non-negative");
  if (!(cfg.w0_over_wm >= 0.0)) throw ConfigError("w0_over_wm must be non-negative");
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const FlagOverrides& flags) {
  RunConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read config file " + file->string());
    std::stringstream text;
    text << in.rdbuf();
    cfg = parse_run_config(text.str(), cfg);
  }
  apply_overrides(cfg, flags);
  validate(cfg);
  return cfg;
}

std::string to_json(const RunConfig& cfg) {
  json j;
  j["B_tesla"] = cfg.lab.lab.B_tesla;
  j["kinetic_keV"] = cfg.lab.lab.kinetic_eV / 1e3;
  j["w0_nm"] = from_metres(cfg.lab.lab.w0_m);
  j["spin"] = cfg.lab.spin == Spin::Up ? "+" : "-";
  j["n"] = cfg.n;
  j["ell"] = cfg.ell;
  j["family"] = to_string(cfg.family);
  j["z_over_zm"] = cfg.z_over_zm;
  j["dz_over_zm"] = cfg.dz_over_zm;
  j["grid_points"] = cfg.grid_points;
  j["z_end_over_zm"] = cfg.z_end_over_zm;
  j["snapshots"] = cfg.snapshots;
  j["periods"] = cfg.periods;
  j["samples_per_period"] = cfg.samples_per_period;
  j["n_max"] = cfg.n_max;
  j["w0_over_wm"] = cfg.w0_over_wm;
  j["out"] = cfg.out.string();
  return j.dump(2) + "\n";
}

}  // namespace twisted::cli
