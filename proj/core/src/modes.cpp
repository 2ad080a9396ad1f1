#include "twisted/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "twisted/laguerre.hpp"
#include "twisted/observables.hpp"

namespace twisted {

std::vector<std::vector<double>> landau_basis(int ell, double w_m, const RadialGrid& grid,
                                              int n_max) {
  const auto count = static_cast<std::size_t>(n_max + 1);
  std::vector<std::vector<double>> basis(count, std::vector<double>(grid.size()));
  std::vector<double> column(count);
  const double prefactor = std::sqrt(2.0 / std::numbers::pi) / w_m;
  const int alpha = std::abs(ell);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    normalized_laguerre_functions(alpha, 2.0 * r * r / (w_m * w_m), column);
    for (std::size_t n = 0; n < count; ++n) basis[n][j] = prefactor * column[n];
  }
  return basis;
}

ModeCoefficients decompose(const RadialWavefunction& state, const BeamGeometry& geometry,
                           int n_max) {
  if (n_max < 0) throw DomainError("decompose: n_max must be non-negative");
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "decompose: state norm differs from 1 by " << std::scientific << norm - 1.0;
    throw NormalizationError(msg.str());
  }
  const auto& f = geometry.field();

  const auto basis = landau_basis(state.ell, f.w_m, state.grid, n_max);
  ModeCoefficients out{state.ell, state.z, std::vector<cplx>(basis.size()), 0.0};
  const auto r = state.grid.nodes();
  const auto w = state.grid.weights();
  for (std::size_t n = 0; n < basis.size(); ++n) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) acc += basis[n][j] * (r[j] * w[j]) * state.values[j];
    out.coeffs[n] = 2.0 * std::numbers::pi * acc;
    out.completeness += std::norm(out.coeffs[n]);
  }
  if (out.completeness < 0.999)
    throw TruncationError("mode expansion captures only " + std::to_string(out.completeness) +
                              " of the norm with n_max = " + std::to_string(n_max),
                          2 * std::max(n_max, 1));
  return out;
}

ModeCoefficients decompose_adaptive(const RadialWavefunction& state, const BeamGeometry& geometry,
                                    int n_max, int n_limit) {
  for (;;) {
    try {
      return decompose(state, geometry, n_max);
    } catch (const TruncationError& e) {
      if (e.suggested_n_max() > n_limit) throw;
      n_max = e.suggested_n_max();
    }
  }
}

double landau_gouy(int n, int ell, double s_z, double z, const BeamGeometry& geometry) {
  const double level = 2.0 * n + 1.0 + std::abs(ell) + ell + 2.0 * s_z;
  return level * z / geometry.field().z_m;
}

ModeCoefficients evolve_coefficients(const ModeCoefficients& coeffs, double z_target,
                                     const BeamGeometry& geometry, Spin spin) {
  ModeCoefficients out = coeffs;
  out.z = z_target;
  const double dz = z_target - coeffs.z;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    const double phase = landau_gouy(static_cast<int>(n), coeffs.ell, projection(spin), dz, geometry);
    out.coeffs[n] *= std::polar(1.0, -phase);
  }
  return out;
}

RadialWavefunction evolve_in_basis(const ModeCoefficients& coeffs, double z,
                                   const BeamGeometry& geometry, Spin spin,
                                   const RadialGrid& grid) {
  const auto moved = evolve_coefficients(coeffs, z, geometry, spin);
  const auto basis = landau_basis(coeffs.ell, geometry.field().w_m, grid, moved.n_max());
  RadialWavefunction psi{coeffs.ell, z, grid, std::vector<cplx>(grid.size())};
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const cplx c = moved.coeffs[n];
    for (std::size_t j = 0; j < grid.size(); ++j) psi.values[j] += c * basis[n][j];
  }
  return psi;
}

PenetrationReport penetration_experiment(int n, int ell, double w0_nm,
                                         const BeamGeometry& geometry, Spin spin,
                                         const PenetrationOptions& options) {
  const auto& field = geometry.field();
  const auto injected_geometry = geometry.with_waist(w0_nm);
  const BeamQuantumNumbers qn{n, ell, spin};
  const auto free_beam = BeamFamily::free_lg(qn, injected_geometry);

  // The state inside the field never gets wider than max(w0, w_m^2/w0).
  const double r_max = 8.0 * std::max(w0_nm, field.w_m_squared / w0_nm);
  const auto grid = RadialGrid::gauss_legendre(r_max, 512);
  const auto entry = sample(free_beam, 0.0, grid);

  PenetrationReport rep;
  rep.ell = ell;
  rep.n = n;
  rep.initial_w0_nm = w0_nm;
  rep.coeffs = decompose_adaptive(entry, geometry, options.n_max);

  const int samples = std::max(1, static_cast<int>(std::lround(options.periods * options.samples_per_period)));
  const double z_end = options.periods * std::numbers::pi * field.z_m;
  const double N = qn.N();
  rep.fitted_waist_nm = std::numeric_limits<double>::infinity();
  double oam_total = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double z = z_end * i / samples;
    auto psi = evolve_in_basis(rep.coeffs, z, geometry, spin, grid);
    // Truncation leaves the state short of unit norm by < 1e-3; measure the
    // captured part.
    const double captured = psi.norm();
    for (auto& v : psi.values) v /= std::sqrt(captured);
    const double r2 = r2_mean(psi);
    rep.z_nm.push_back(z);
    rep.r2_nm2.push_back(r2);
    rep.kinetic_oam.push_back(kinetic_oam(psi, geometry));
    if (i < samples) oam_total += rep.kinetic_oam.back();
    rep.fitted_waist_nm = std::min(rep.fitted_waist_nm, std::sqrt(2.0 * r2 / N));
  }
  rep.mean_kinetic_oam = oam_total / samples;
  return rep;
}

PenetrationPair penetration_pair(int n, int abs_ell, double w0_nm, const BeamGeometry& geometry,
                                 Spin spin, const PenetrationOptions& options) {
  const int a = std::abs(abs_ell);
  PenetrationPair pair{penetration_experiment(n, a, w0_nm, geometry, spin, options),
                       penetration_experiment(n, -a, w0_nm, geometry, spin, options),
                       {},
                       std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < pair.positive.kinetic_oam.size(); ++i) {
    const double s = pair.positive.kinetic_oam[i] + pair.negative.kinetic_oam[i];
    pair.oam_sum.push_back(s);
    pair.min_oam_sum = std::min(pair.min_oam_sum, s);
  }
  return pair;
}

}  // namespace twisted
