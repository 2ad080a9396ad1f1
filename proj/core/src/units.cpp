#include "twisted/units.hpp"

#include <cmath>

namespace twisted {

BeamGeometry::BeamGeometry(double k, double compton_k, double w0,
                           std::optional<MagneticScales> field, LabInputs lab)
    : k_(k), compton_k_(compton_k), w0_(w0), z_R_(k * w0 * w0 / 2.0), field_(field), lab_(lab) {
  // sqrt(w_m^2)^2 can be one ulp off w_m^2.
  if (field_ && w0_ == field_->w_m) z_R_ = field_->z_m;
}

const MagneticScales& BeamGeometry::field() const {
  if (!field_) throw FamilyError("geometry is field-free (B = 0): no magnetic scales");
  return *field_;
}

BeamGeometry BeamGeometry::with_waist(double w0_nm) const {
  if (!(w0_nm > 0.0))
    throw InvalidLabInput(LabInputError::NonPositiveWaist, "beam waist must be positive");
  LabInputs lab = lab_;
  lab.w0_m = to_metres(w0_nm);
  return BeamGeometry(k_, compton_k_, w0_nm, field_, lab);
}

double wavenumber_per_metre(double kinetic_eV) {
  const auto& cc = kCodata2018;
  const double hbar_c_eV_m = cc.hbar * cc.c / cc.elementary_charge;
  const double pc = std::sqrt(kinetic_eV * (kinetic_eV + 2.0 * cc.electron_mass_energy));
  return pc / hbar_c_eV_m;
}

BeamGeometry geometry_from_lab(const LabInputs& in) {
  if (!(in.kinetic_eV > 0.0))
    throw InvalidLabInput(LabInputError::NonPositiveEnergy, "kinetic energy must be positive");
  if (!(in.w0_m > 0.0))
    throw InvalidLabInput(LabInputError::NonPositiveWaist, "beam waist must be positive");
  if (!(in.B_tesla >= 0.0))
    throw InvalidLabInput(LabInputError::NegativeField, "magnetic field must be non-negative");

  const auto& cc = kCodata2018;
  const double k = wavenumber_per_metre(in.kinetic_eV) * kMetresPerUnit;
  const double compton_k = cc.electron_mass_energy / cc.hbar_c_eV_nm();
  const double w0 = from_metres(in.w0_m);

  std::optional<MagneticScales> field;
  if (in.B_tesla > 0.0) {
    // |e|B/hbar in 1/m^2, then 1/nm^2.
    const double inverse_area =
        cc.elementary_charge * in.B_tesla / cc.hbar * (kMetresPerUnit * kMetresPerUnit);
    const double wm2 = 4.0 / inverse_area;
    field = MagneticScales{std::sqrt(wm2), wm2, k * wm2 / 2.0, inverse_area};
  }
  return BeamGeometry(k, compton_k, w0, field, in);
}

}  // namespace twisted
