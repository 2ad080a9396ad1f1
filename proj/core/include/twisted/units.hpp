#pragma once

// Laboratory inputs (tesla, eV, metres) and their conversion to the internal
// unit scheme: hbar = c = 1, lengths in nanometres, wavenumbers in 1/nm.

#include <optional>

#include "twisted/errors.hpp"

namespace twisted {

// CODATA 2018.
struct PhysicalConstants {
  double hbar;                  // J s
  double c;                     // m / s
  double electron_mass_energy;  // eV  (m c^2)
  double elementary_charge;     // C

  // hbar * c in eV * nm.
  constexpr double hbar_c_eV_nm() const { return hbar * c / elementary_charge * 1e9; }
};

inline constexpr PhysicalConstants kCodata2018{
    1.054571817e-34, 299792458.0, 510998.95, 1.602176634e-19};

// One internal length unit expressed in metres.
inline constexpr double kMetresPerUnit = 1e-9;

constexpr double to_metres(double length_nm) { return length_nm * kMetresPerUnit; }
constexpr double from_metres(double length_m) { return length_m / kMetresPerUnit; }

enum class Spin { Up, Down };

// s_z = +1/2 or -1/2.
constexpr double projection(Spin s) { return s == Spin::Up ? 0.5 : -0.5; }

struct LabInputs {
  double B_tesla = 0.0;
  double kinetic_eV = 0.0;
  double w0_m = 0.0;
};

enum class LabInputError { NonPositiveEnergy, NonPositiveWaist, NegativeField };

class InvalidLabInput : public Error {
 public:
  InvalidLabInput(LabInputError code, const std::string& what) : Error(what), code_(code) {}
  LabInputError code() const noexcept { return code_; }

 private:
  LabInputError code_;
};

// Scales that exist only inside a field (B > 0).
struct MagneticScales {
  double w_m;           // transverse magnetic width 2/sqrt(|e|B), nm
  double w_m_squared;   // stored separately so that B -> 2B halves it exactly
  double z_m;           // k w_m^2 / 2, nm
  double inverse_area;  // |e|B/hbar = 4/w_m^2, 1/nm^2
};

class BeamGeometry {
 public:
  BeamGeometry(double k, double compton_k, double w0, std::optional<MagneticScales> field,
               LabInputs lab);

  double k() const { return k_; }
  double compton_k() const { return compton_k_; }
  double w0() const { return w0_; }
  double z_R() const { return z_R_; }

  // Free space is an explicit state; callers that need w_m/z_m must branch on it.
  bool in_field() const { return field_.has_value(); }
  const MagneticScales& field() const;
  const std::optional<MagneticScales>& maybe_field() const { return field_; }

  const LabInputs& lab() const { return lab_; }

  // Same field and energy, different waist (nm).
  BeamGeometry with_waist(double w0_nm) const;

 private:
  double k_;
  double compton_k_;
  double w0_;
  double z_R_;
  std::optional<MagneticScales> field_;
  LabInputs lab_;
};

BeamGeometry geometry_from_lab(const LabInputs& inputs);

// Relativistic momentum wavenumber sqrt(T (T + 2 m c^2)) / (hbar c), 1/m.
double wavenumber_per_metre(double kinetic_eV);

}  // namespace twisted
