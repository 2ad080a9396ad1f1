#pragma once

// Expansion of radial states over the Landau modes of fixed l and the
// free-space -> field injection experiment built on it.

#include <vector>

#include "twisted/beams.hpp"

namespace twisted {

struct ModeCoefficients {
  int ell = 0;
  double z = 0.0;             // plane the coefficients refer to
  std::vector<cplx> coeffs;   // n = 0..n_max
  double completeness = 0.0;  // sum |c_n|^2

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Values of the Landau modes A_{n,l}(r), n = 0..n_max, on every grid node
// (row n, column j). Uses the rescaled Laguerre recurrence so large n is safe.
std::vector<std::vector<double>> landau_basis(int ell, double w_m, const RadialGrid& grid,
                                              int n_max);

// c_n = integral A_{n,l} psi 2 pi r dr for n = 0..n_max. Throws
// TruncationError (suggesting 2 n_max) if completeness < 0.999, FamilyError
// for B = 0, NormalizationError if the state is not normalised.
ModeCoefficients decompose(const RadialWavefunction& state, const BeamGeometry& geometry,
                           int n_max);

// decompose() starting at n_max, doubling up to n_limit until the
// completeness threshold is met.
ModeCoefficients decompose_adaptive(const RadialWavefunction& state, const BeamGeometry& geometry,
                                    int n_max = 128, int n_limit = 1024);

// Landau Gouy phase (2n + 1 + |l| + l + 2 s_z) z / z_m of mode n.
double landau_gouy(int n, int ell, double s_z, double z, const BeamGeometry& geometry);

// Coefficients moved from coeffs.z to z_target: c_n -> c_n e^{-i dzeta_n}.
ModeCoefficients evolve_coefficients(const ModeCoefficients& coeffs, double z_target,
                                     const BeamGeometry& geometry, Spin spin);

// Psi(r, z) = sum_n c_n e^{-i dzeta_n} A_{n,l}(r) on `grid`.
RadialWavefunction evolve_in_basis(const ModeCoefficients& coeffs, double z,
                                   const BeamGeometry& geometry, Spin spin,
                                   const RadialGrid& grid);

struct PenetrationReport {
  int ell = 0;
  int n = 0;
  double initial_w0_nm = 0.0;
  ModeCoefficients coeffs;
  std::vector<double> z_nm;
  std::vector<double> r2_nm2;
  std::vector<double> kinetic_oam;  // l + |e|B<r^2>/(2 hbar) at each z
  double mean_kinetic_oam = 0.0;
  // min over z of sqrt(2 <r^2>(z) / N), N = 2n + |l| + 1 of the injected beam.
  double fitted_waist_nm = 0.0;
};

struct PenetrationOptions {
  double periods = 2.0;
  int samples_per_period = 64;
  int n_max = 128;
};

// Injects the free-space waist profile (n, l, w0) into the field at z = 0,
// expands it over Landau modes and follows <r^2>(z) over `periods` periods.
PenetrationReport penetration_experiment(int n, int ell, double w0_nm,
                                         const BeamGeometry& geometry, Spin spin,
                                         const PenetrationOptions& options = {});

struct PenetrationPair {
  PenetrationReport positive;  // l = +|l|
  PenetrationReport negative;  // l = -|l|
  std::vector<double> oam_sum;  // l'_1 + l'_2 at every sampled z
  double min_oam_sum = 0.0;
};

PenetrationPair penetration_pair(int n, int abs_ell, double w0_nm, const BeamGeometry& geometry,
                                 Spin spin, const PenetrationOptions& options = {});

}  // namespace twisted
