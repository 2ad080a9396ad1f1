#pragma once

// Closed-form paraxial beam families: free-space Laguerre-Gauss, the paraxial
// Landau mode, and the Laguerre-Gauss beam inside a uniform field whose
// width, curvature and Gouy phase oscillate with period pi z_m.

#include <span>
#include <vector>

#include "twisted/grid.hpp"
#include "twisted/units.hpp"

namespace twisted {

struct BeamQuantumNumbers {
  int n = 0;    // radial index, >= 0
  int ell = 0;  // topological charge
  Spin spin = Spin::Up;

  double s_z() const { return projection(spin); }
  // N = 2n + |l| + 1
  int N() const { return 2 * n + (ell < 0 ? -ell : ell) + 1; }
  // l + 2 s_z, the constant shift the field adds to the Gouy rate.
  double orbital_spin_shift() const { return ell + 2.0 * s_z(); }
};

// Width, curvature and Gouy phase at one longitudinal position. Curvature is
// kept as 1/R, which is finite at the waist and at every half period.
struct BeamParameters {
  double z;
  double w;
  double inv_R;
  double gouy;
};

// d/dz of the three parameter functions.
struct ParameterRates {
  double dw;
  double dinv_R;
  double dgouy;
};

enum class FamilyKind { FreeLG, LandauParaxial, GeneralLG };

const char* to_string(FamilyKind kind);

class BeamFamily {
 public:
  static BeamFamily free_lg(const BeamQuantumNumbers& qn, const BeamGeometry& geometry);
  // Both field families need B > 0; a field-free general beam is a free beam.
  static BeamFamily landau(const BeamQuantumNumbers& qn, const BeamGeometry& geometry);
  static BeamFamily general(const BeamQuantumNumbers& qn, const BeamGeometry& geometry);

  FamilyKind kind() const { return kind_; }
  const BeamQuantumNumbers& quantum_numbers() const { return qn_; }
  const BeamGeometry& geometry() const { return geometry_; }

  BeamParameters parameters_at(double z) const;
  ParameterRates rates_at(double z) const;

  // Largest width reached over all z (infinite growth for free beams is
  // reported as the width at `z_hint`).
  double max_width(double z_hint = 0.0) const;

 private:
  BeamFamily(FamilyKind kind, const BeamQuantumNumbers& qn, const BeamGeometry& geometry);

  FamilyKind kind_;
  BeamQuantumNumbers qn_;
  BeamGeometry geometry_;
};

// Real transverse profile C/w (sqrt2 r/w)^|l| L_n^|l|(2r^2/w^2) exp(-r^2/w^2).
double transverse_profile(int n, int ell, double w, double r);

// Closed-form radial amplitude at (r, z); the e^{i l phi} factor is implicit.
cplx evaluate(const BeamFamily& family, double z, double r);
// Analytic d/dz of evaluate().
cplx evaluate_dz(const BeamFamily& family, double z, double r);

struct RadialWavefunction {
  int ell = 0;
  double z = 0.0;
  RadialGrid grid;
  std::vector<cplx> values;

  double norm() const { return norm_squared(grid, values); }
};

// Gauss-Legendre grid on [0, 8 max_z w(z)] (free beams: 8 w(z)).
RadialGrid default_grid(const BeamFamily& family, double z = 0.0, int points = 512);
// Gauss-Legendre grid on [0, 8 w(z)]. Needed when w0 << w_m: the default grid
// then spans the widest point of the oscillation and misses the waist.
RadialGrid local_grid(const BeamFamily& family, double z, int points = 512);

// Samples the closed form on `grid` and rescales to unit discrete norm.
// Throws GridCoverageError if r_max < 8 w(z) or the grid cannot resolve the
// profile (raw discrete norm off by more than 1%).
RadialWavefunction sample(const BeamFamily& family, double z, const RadialGrid& grid);

// Maximum over z of the three consistency residuals of the parameter
// functions, each made dimensionless:
//   width_curvature: |1/R - w'/w| z_R
//   curvature:       |k^2/R^2 + k^2 (1/R)' - 4/w^4 + 4/w_m^4| w0^4/4
//   gouy:            |2k Phi_G' - 4(l+2s_z)/w_m^2 - 4N/w^2| w0^2/(4N)
// Derivatives are central differences with step z_m 1e-6.
struct OdeResidualReport {
  double width_curvature = 0.0;
  double curvature = 0.0;
  double gouy = 0.0;

  double max() const;
};

// Only GeneralLG is accepted; other families raise FamilyError.
OdeResidualReport check_parameter_odes(const BeamFamily& family, std::span<const double> z_samples);

}  // namespace twisted
