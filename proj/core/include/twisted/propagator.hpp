#pragma once

// Numerical solution of the magnetic paraxial equation at fixed l,
//
//   2ik dPsi/dz = -[d_r^2 + (1/r) d_r - l^2/r^2 + eBl - e^2B^2r^2/4 + 2e s_z B] Psi,
//
// with e = -|e|. The azimuthal derivative is diagonal in the l sector, so the
// whole problem is one-dimensional in r. Used as an independent check of the
// closed-form beams, never the other way around.

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "twisted/beams.hpp"

namespace twisted {

// Coefficients of the radial operator L, written as L = D_r - V(r).
struct ParaxialOperator {
  double k = 0.0;      // 1/nm
  double field = 0.0;  // |e|B/hbar in 1/nm^2, signed with B
  int ell = 0;
  double s_z = 0.5;

  static ParaxialOperator from(const BeamGeometry& geometry, const BeamQuantumNumbers& qn);

  // (l, B, s_z) -> (-l, -B, -s_z): leaves L unchanged, mirrors the beam in phi.
  ParaxialOperator mirrored() const { return {k, -field, -ell, -s_z}; }

  // V(r) = l^2/r^2 + field (l + 2 s_z) + field^2 r^2 / 4
  double centrifugal(double r) const { return ell * ell / (r * r); }
  double field_potential(double r) const {
    return field * (ell + 2.0 * s_z) + 0.25 * field * field * r * r;
  }
};

struct PropagatorConfig {
  double dz = 0.0;
  RadialGrid grid;  // must be UniformStaggered

  // Rejects dz above 1/1000 of z_m (z_R in free space) and grids with fewer
  // than 16 points per minimum beam width or r_max below 8 maximum widths.
  void validate(const BeamFamily& family, double z_end) const;
};

// Config for propagating `family` from 0 to z_end: r_max = 8 max width,
// `points` radial cells, dz = dz_over_scale * (z_m or z_R).
PropagatorConfig default_propagator_config(const BeamFamily& family, double z_end,
                                           double dz_over_scale = 1e-4, int points = 16384);

// Crank-Nicolson stepper. The flux form (1/r) d_r (r d_r) on r_j = (j-1/2) dr
// is symmetric in the r-weighted inner product, so every step is unitary in
// the discrete transverse norm. Dirichlet zero beyond r_max.
class CrankNicolson {
 public:
  CrankNicolson(const ParaxialOperator& op, const RadialGrid& grid, double dz);

  double dz() const { return dz_; }
  const RadialGrid& grid() const { return grid_; }
  const ParaxialOperator& op() const { return op_; }

  // One step in place. Throws GridCoverageError once the density at r_max
  // (times pi r_max^2) exceeds 1e-10.
  void advance(std::span<cplx> psi) const;

  RadialWavefunction step(const RadialWavefunction& state) const;

 private:
  ParaxialOperator op_;
  RadialGrid grid_;
  double dz_;
  // tau * L split into real stencil coefficients (L is real).
  std::vector<double> lower_, diag_, upper_;
  // Thomas factors of (1 - i tau L).
  std::vector<cplx> inv_pivot_, gamma_;
  mutable std::vector<cplx> rhs_;
};

using SnapshotSink = std::function<void(const RadialWavefunction&)>;

// Advances `start` to z_end using ceil(|z_end - z| / max_dz) equal steps.
// `on_snapshot` (if set) sees the start state and one frame every
// `snapshot_every` of distance, plus the final state.
RadialWavefunction propagate(const ParaxialOperator& op, RadialWavefunction start, double z_end,
                             double max_dz, const SnapshotSink& on_snapshot = {},
                             double snapshot_every = 0.0);

// Writes frames as CSV rows `z_nm,r_nm,re_psi,im_psi` (17 significant digits).
class CsvSnapshotWriter {
 public:
  explicit CsvSnapshotWriter(std::ostream& out);
  void operator()(const RadialWavefunction& frame);

 private:
  std::ostream* out_;
};

// Psi / r^|l| extrapolated to r = 0 from the first two staggered nodes.
cplx axis_value(const RadialWavefunction& state);

// Scaled pointwise residual of the paraxial equation. Each is normalised by
// the sum of the magnitudes of the three parts of the operator (transverse
// Laplacian, field potential, 2k d/dz), so the result is dimensionless.
struct PdeResidual {
  double max_abs = 0.0;
  double l2 = 0.0;
};

// r-derivatives by 4th-order central differences on a UniformStaggered grid,
// with parity ghosts Psi(-r) = (-1)^l Psi(r) at the origin. The last two
// nodes are excluded.
PdeResidual residual(const RadialWavefunction& state, std::span<const cplx> dpsi_dz,
                     const ParaxialOperator& op);
PdeResidual residual(const RadialWavefunction& state, std::span<const cplx> dpsi_dz,
                     const BeamGeometry& geometry, const BeamQuantumNumbers& qn);

// Residual of the unnormalised closed form (and its analytic z-derivative)
// of `family` at z on `grid`.
PdeResidual closed_form_residual(const BeamFamily& family, double z, const RadialGrid& grid);

}  // namespace twisted
