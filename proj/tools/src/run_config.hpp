#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "twisted/beams.hpp"
#include "twisted/config.hpp"

namespace twisted::cli {

enum class FamilySelector { General, Landau, Free };

struct RunConfig {
  LabConfig lab{{1.0, 200e3, 1e-9}, Spin::Up};
  int n = 1;
  int ell = 2;
  FamilySelector family = FamilySelector::General;
  double z_over_zm = 0.0;       // observables: evaluation plane (z/z_R in free space)
  double dz_over_zm = 1e-4;     // propagator step (z/z_R in free space)
  int grid_points = 16384;      // propagator radial cells
  double z_end_over_zm = 3.141592653589793;  // propagate: one period
  int snapshots = 8;            // propagate: frames besides the start
  double periods = 2.0;         // penetrate
  int samples_per_period = 64;  // penetrate
  int n_max = 128;              // penetrate: initial basis size
  double w0_over_wm = 0.5;      // in-field verify/propagate/penetrate waist (0 = use w0_nm)
  std::filesystem::path out = "out";

  BeamQuantumNumbers quantum_numbers() const { return {n, ell, lab.spin}; }
  BeamGeometry geometry() const;
};

// Values set on the command line; unset ones leave the file/default value.
struct FlagOverrides {
  std::optional<double> B_tesla;
  std::optional<double> kinetic_keV;
  std::optional<double> w0_nm;
  std::optional<int> n;
  std::optional<int> ell;
  std::optional<std::string> spin;
  std::optional<double> dz_over_zm;
  std::optional<int> grid_points;
  std::optional<std::string> out;
};

// Merges JSON text over the defaults. Unknown keys, wrong types and invalid
// physics raise ConfigError.
RunConfig parse_run_config(const std::string& json_text, RunConfig base = {});
RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const FlagOverrides& flags);
void apply_overrides(RunConfig& cfg, const FlagOverrides& flags);
void validate(const RunConfig& cfg);

std::string to_json(const RunConfig& cfg);
const char* to_string(FamilySelector f);

}  // namespace twisted::cli
