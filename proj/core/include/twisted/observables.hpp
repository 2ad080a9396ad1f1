#pragma once

// Expectation values and quantization formulas for the beam families.
// Closed forms and grid-quadrature versions live side by side so each can be
// checked against the other. Internal lengths are nm; SI values are marked.

#include "twisted/beams.hpp"

namespace twisted {

// <r^2> = w(z)^2 N / 2, nm^2.
double r2_mean(const BeamFamily& family, double z);
// Quadrature of r^2 |psi|^2; throws NormalizationError if |norm - 1| > 1e-8.
double r2_mean(const RadialWavefunction& psi);

// Mean of w^2(z) over a period, closed form (w0^2/2)(1 + w_m^4/w0^4). B = 0 is
// rejected with FamilyError (nothing is periodic).
double longitudinal_average_w2(const BeamGeometry& geometry);
// Same quantity by trapezoidal z-quadrature of w^2(z) over [0, 2 pi z_m].
double longitudinal_average_w2_numeric(const BeamGeometry& geometry, int points = 256);

// Q0 = |e| w0^2 N / 2 in C m^2; w0 in nm.
double quadrupole(const BeamQuantumNumbers& qn, double w0_nm);

// Lambda = -<dPhi/dz>, 1/nm.
//   GeneralLG:      (N/k)(1/w0^2 + w0^2/w_m^4) + 2(l+2s_z)/(k w_m^2)
//   LandauParaxial: 2(N + l + 2s_z)/(k w_m^2)
//   FreeLG:         N/(k w0^2)
double lambda_value(const BeamFamily& family);
// The general expression for any geometry; the field terms drop out at B = 0.
double general_lambda(const BeamQuantumNumbers& qn, const BeamGeometry& geometry);

// <dPhi/dz> by central z-differences of the sampled closed form, weighted by
// |psi|^2 on `grid` (step 1e-4 of z_m, or z_R in free space).
double mean_phase_rate(const BeamFamily& family, double z, const RadialGrid& grid);

struct VelocityMass {
  double vz_m_per_s;
  double m_eff_eV;      // effective mass as rest energy
  double m_excess_eV;   // m_eff - m, computed without cancellation
  double lambda_over_k;
  bool paraxial_warning;  // lambda/k above 1e-3
};

// Throws ParaxialityError when lambda/k >= 0.1.
VelocityMass velocity_and_mass(const BeamFamily& family);
VelocityMass velocity_and_mass(double lambda_per_nm, const BeamGeometry& geometry);

// Spacing of <v_z> between neighbouring levels, m/s.
//   GeneralLG: c/(k sqrt(k^2+K^2) w0^2) [1 + w0^4/w_m^4 + 2(l+2s_z) w0^2/(N w_m^2)]
//   FreeLG:    bracket = 1
//   Landau:    c/(k sqrt(k^2+K^2) w_m^2)
double velocity_spacing(const BeamFamily& family);

struct MassSpacing {
  double approx_eV;  // hbar^2/(m w^2) with w = w0 (LG) or w_m (Landau)
  double exact_eV;   // m_eff(N+1) - m_eff(N) with the family's lambda
};
MassSpacing mass_spacing(const BeamFamily& family);

struct PeriodPitch {
  double period_m;       // pi z_m
  double helix_pitch_m;  // 2 pi v / omega_c, omega_c = |e| B c^2 / E
};
// FamilyError for B = 0.
PeriodPitch period_and_pitch(const BeamGeometry& geometry);

// Kinetic OAM in units of hbar: l + |e|B<r^2>/(2 hbar); equals l at B = 0.
double kinetic_oam(const BeamFamily& family, double z);
double kinetic_oam(const RadialWavefunction& psi, const BeamGeometry& geometry);

struct ObservableSet {
  double norm;
  double r2_mean_m2;
  double Q0_C_m2;
  double vz_m_per_s;
  double m_eff_eV;
  double lambda_per_m;
  double L_kin;
};

// Closed-form observables at z; norm comes from quadrature on the default grid.
ObservableSet observe(const BeamFamily& family, double z);

}  // namespace twisted
