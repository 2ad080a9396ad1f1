#include "twisted/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace twisted {

namespace {

constexpr cplx kI{0.0, 1.0};

double min_width(const BeamFamily& family) {
  const auto& g = family.geometry();
  switch (family.kind()) {
    case FamilyKind::FreeLG:
      return g.w0();
    case FamilyKind::LandauParaxial:
      return g.field().w_m;
    case FamilyKind::GeneralLG:
      return std::min(g.w0(), g.field().w_m_squared / g.w0());
  }
  return g.w0();
}

double longitudinal_scale(const BeamFamily& family) {
  const auto& g = family.geometry();
  return g.in_field() ? g.field().z_m : g.z_R();
}

}  // namespace

ParaxialOperator ParaxialOperator::from(const BeamGeometry& geometry,
                                        const BeamQuantumNumbers& qn) {
  const double field = geometry.in_field() ? geometry.field().inverse_area : 0.0;
  return {geometry.k(), field, qn.ell, qn.s_z()};
}

void PropagatorConfig::validate(const BeamFamily& family, double z_end) const {
  if (grid.kind() != RadialGrid::Kind::UniformStaggered || grid.size() < 2)
    throw GridCoverageError("propagator needs a uniform staggered grid");
  const double scale = longitudinal_scale(family);
  if (!(std::abs(dz) > 0.0) || std::abs(dz) > scale / 1000.0 * (1.0 + 1e-12))
    throw GridCoverageError("dz must be non-zero and at most 1/1000 of the longitudinal scale");
  const double w_min = min_width(family);
  if (grid.spacing() > w_min / 16.0)
    throw GridCoverageError("grid resolves the narrowest width with fewer than 16 points");
  if (grid.r_max() < 8.0 * family.max_width(z_end) * (1.0 - 1e-12))
    throw GridCoverageError("grid extent below 8 maximum beam widths");
}

PropagatorConfig default_propagator_config(const BeamFamily& family, double z_end,
                                           double dz_over_scale, int points) {
  const double r_max = 8.0 * family.max_width(z_end);
  return {dz_over_scale * longitudinal_scale(family),
          RadialGrid::uniform_staggered(r_max, points)};
}

CrankNicolson::CrankNicolson(const ParaxialOperator& op, const RadialGrid& grid, double dz)
    : op_(op), grid_(grid), dz_(dz) {
  if (grid.kind() != RadialGrid::Kind::UniformStaggered)
    throw GridCoverageError("Crank-Nicolson needs a uniform staggered grid");
  const std::size_t m = grid.size();
  const double dr = grid.spacing();
  const double tau = dz / (4.0 * op.k);
  lower_.resize(m);
  diag_.resize(m);
  upper_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double r = grid.node(j);
    const double r_in = r - 0.5 * dr;  // 0 at the first cell
    const double r_out = r + 0.5 * dr;
    const double c = 1.0 / (r * dr * dr);
    lower_[j] = tau * r_in * c;
    upper_[j] = j + 1 < m ? tau * r_out * c : 0.0;
    diag_[j] = tau * (-(r_in + r_out) * c - op.centrifugal(r) - op.field_potential(r));
  }
  lower_[0] = 0.0;

  // (1 - i tau L): diagonal 1 - i diag, off-diagonals -i lower / -i upper.
  inv_pivot_.resize(m);
  gamma_.resize(m);
  rhs_.resize(m);
  cplx prev_gamma = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const cplx pivot = cplx(1.0, -diag_[j]) - (-kI * lower_[j]) * prev_gamma;
    inv_pivot_[j] = 1.0 / pivot;
    gamma_[j] = (-kI * upper_[j]) * inv_pivot_[j];
    prev_gamma = gamma_[j];
  }
}

void CrankNicolson::advance(std::span<cplx> psi) const {
  const std::size_t m = psi.size();
  if (m != grid_.size()) throw GridCoverageError("state and stepper grids differ");

  // rhs = (1 + i tau L) psi
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc = diag_[j] * psi[j];
    if (j > 0) acc += lower_[j] * psi[j - 1];
    if (j + 1 < m) acc += upper_[j] * psi[j + 1];
    rhs_[j] = psi[j] + kI * acc;
  }
  // Forward sweep then back substitution. The sweeps smear a narrow state's
  // tail over the whole grid; left alone it decays into subnormals, which
  // cost ~10x per operation. Amplitudes below 1e-150 carry no norm.
  const auto flush = [](cplx v) {
    return cplx(std::abs(v.real()) < 1e-150 ? 0.0 : v.real(),
                std::abs(v.imag()) < 1e-150 ? 0.0 : v.imag());
  };
  cplx y_prev = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    y_prev = flush((rhs_[j] - (-kI * lower_[j]) * y_prev) * inv_pivot_[j]);
    rhs_[j] = y_prev;
  }
  psi[m - 1] = rhs_[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) psi[j] = flush(rhs_[j] - gamma_[j] * psi[j + 1]);

  const double r_max = grid_.r_max();
  const double edge = std::norm(psi[m - 1]) * std::numbers::pi * r_max * r_max;
  if (edge > 1e-10) {
    std::ostringstream msg;
    msg << "probability density reached r_max (" << std::scientific << std::setprecision(3) << edge
        << "); enlarge the grid";
    throw GridCoverageError(msg.str());
  }
}

RadialWavefunction CrankNicolson::step(const RadialWavefunction& state) const {
  RadialWavefunction next = state;
  advance(next.values);
  next.z += dz_;
  return next;
}

RadialWavefunction propagate(const ParaxialOperator& op, RadialWavefunction start, double z_end,
                             double max_dz, const SnapshotSink& on_snapshot,
                             double snapshot_every) {
  const double distance = z_end - start.z;
  if (distance == 0.0) {
    if (on_snapshot) on_snapshot(start);
    return start;
  }
  if (!(max_dz > 0.0)) throw GridCoverageError("max_dz must be positive");
  const auto steps = static_cast<long>(std::ceil(std::abs(distance) / max_dz - 1e-9));
  const double dz = distance / static_cast<double>(steps);
  const CrankNicolson stepper(op, start.grid, dz);

  const double z0 = start.z;
  long every = 0;
  if (on_snapshot) {
    on_snapshot(start);
    if (snapshot_every > 0.0)
      every = std::max(1L, std::lround(snapshot_every / std::abs(dz)));
  }
  for (long s = 1; s <= steps; ++s) {
    stepper.advance(start.values);
    start.z = z0 + dz * static_cast<double>(s);
    if (on_snapshot && ((every > 0 && s % every == 0) || s == steps)) on_snapshot(start);
  }
  start.z = z_end;
  return start;
}

CsvSnapshotWriter::CsvSnapshotWriter(std::ostream& out) : out_(&out) {
  *out_ << "z_nm,r_nm,re_psi,im_psi\n";
}

void CsvSnapshotWriter::operator()(const RadialWavefunction& frame) {
  auto& o = *out_;
  const auto old_precision = o.precision(17);
  for (std::size_t j = 0; j < frame.values.size(); ++j) {
    o << frame.z << ',' << frame.grid.node(j) << ',' << frame.values[j].real() << ','
      << frame.values[j].imag() << '\n';
  }
  o.precision(old_precision);
}

cplx axis_value(const RadialWavefunction& state) {
  if (state.values.size() < 2) throw GridCoverageError("axis_value needs two nodes");
  const int a = std::abs(state.ell);
  const double r0 = state.grid.node(0);
  const double r1 = state.grid.node(1);
  const cplx g0 = state.values[0] / std::pow(r0, a);
  const cplx g1 = state.values[1] / std::pow(r1, a);
  // g = c0 + c1 r^2 through both nodes.
  return (g0 * r1 * r1 - g1 * r0 * r0) / (r1 * r1 - r0 * r0);
}

PdeResidual residual(const RadialWavefunction& state, std::span<const cplx> dpsi_dz,
                     const ParaxialOperator& op) {
  const auto& grid = state.grid;
  if (grid.kind() != RadialGrid::Kind::UniformStaggered)
    throw GridCoverageError("residual needs a uniform staggered grid");
  const auto& psi = state.values;
  const std::size_t m = psi.size();
  if (m < 8 || dpsi_dz.size() != m) throw GridCoverageError("residual: size mismatch");
  const double dr = grid.spacing();
  const double parity = (std::abs(op.ell) % 2 == 0) ? 1.0 : -1.0;
  const auto at = [&](long j) -> cplx {
    if (j >= 0) return psi[static_cast<std::size_t>(j)];
    return parity * psi[static_cast<std::size_t>(-j - 1)];
  };

  const std::size_t used = m - 2;
  std::vector<double> res(used), lap(used), pot(used), dz_term(used);
  for (std::size_t jj = 0; jj < used; ++jj) {
    const auto j = static_cast<long>(jj);
    const double r = grid.node(jj);
    const cplx pm2 = at(j - 2), pm1 = at(j - 1), p0 = at(j), pp1 = at(j + 1), pp2 = at(j + 2);
    const cplx d1 = (-pp2 + 8.0 * pp1 - 8.0 * pm1 + pm2) / (12.0 * dr);
    const cplx d2 = (-pp2 + 16.0 * pp1 - 30.0 * p0 + 16.0 * pm1 - pm2) / (12.0 * dr * dr);
    const cplx transverse = d2 + d1 / r - op.centrifugal(r) * p0;
    const cplx potential = op.field_potential(r) * p0;
    const cplx longitudinal = 2.0 * kI * op.k * dpsi_dz[jj];
    res[jj] = std::abs(transverse - potential + longitudinal);
    lap[jj] = std::abs(transverse);
    pot[jj] = std::abs(potential);
    dz_term[jj] = std::abs(longitudinal);
  }

  const auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  const auto l2_of = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * v[j] * grid.node(j);
    return std::sqrt(s * 2.0 * std::numbers::pi * dr);
  };
  const double max_scale = max_of(lap) + max_of(pot) + max_of(dz_term);
  const double l2_scale = l2_of(lap) + l2_of(pot) + l2_of(dz_term);
  return {max_of(res) / max_scale, l2_of(res) / l2_scale};
}

PdeResidual residual(const RadialWavefunction& state, std::span<const cplx> dpsi_dz,
                     const BeamGeometry& geometry, const BeamQuantumNumbers& qn) {
  return residual(state, dpsi_dz, ParaxialOperator::from(geometry, qn));
}

PdeResidual closed_form_residual(const BeamFamily& family, double z, const RadialGrid& grid) {
  RadialWavefunction state{family.quantum_numbers().ell, z, grid, {}};
  std::vector<cplx> dpsi(grid.size());
  state.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    state.values[j] = evaluate(family, z, grid.node(j));
    dpsi[j] = evaluate_dz(family, z, grid.node(j));
  }
  return residual(state, dpsi, family.geometry(), family.quantum_numbers());
}

}  // namespace twisted
