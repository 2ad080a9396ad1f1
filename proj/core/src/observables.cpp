#include "twisted/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace twisted {

namespace {

constexpr double kPi = std::numbers::pi;

double c_light() { return kCodata2018.c; }

// m_eff - m for a given lambda; rest energy in eV.
double mass_excess_eV(double lambda_per_nm, double k_per_nm) {
  const double m = kCodata2018.electron_mass_energy;
  const double hc = kCodata2018.hbar_c_eV_nm();
  const double x = 2.0 * hc * hc * k_per_nm * lambda_per_nm;  // m_eff^2 - m^2
  return x / (std::sqrt(m * m + x) + m);
}

double landau_lambda(const BeamQuantumNumbers& qn, const BeamGeometry& g) {
  return 2.0 * (qn.N() + qn.orbital_spin_shift()) / (g.k() * g.field().w_m_squared);
}

double free_lambda(const BeamQuantumNumbers& qn, const BeamGeometry& g) {
  return qn.N() / (g.k() * g.w0() * g.w0());
}

// The family's lambda with N replaced by N + extra_N.
double family_lambda_for_N(const BeamFamily& family, int extra_N) {
  const auto& qn = family.quantum_numbers();
  const auto& g = family.geometry();
  const double N = qn.N() + extra_N;
  switch (family.kind()) {
    case FamilyKind::FreeLG:
      return N / (g.k() * g.w0() * g.w0());
    case FamilyKind::LandauParaxial:
      return 2.0 * (N + qn.orbital_spin_shift()) / (g.k() * g.field().w_m_squared);
    case FamilyKind::GeneralLG: {
      const double w02 = g.w0() * g.w0();
      const double wm2 = g.field().w_m_squared;
      return N / g.k() * (1.0 / w02 + w02 / (wm2 * wm2)) +
             2.0 * qn.orbital_spin_shift() / (g.k() * wm2);
    }
  }
  return 0.0;
}

}  // namespace

double r2_mean(const BeamFamily& family, double z) {
  const double w = family.parameters_at(z).w;
  return 0.5 * w * w * family.quantum_numbers().N();
}

double r2_mean(const RadialWavefunction& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "r2_mean: state norm differs from 1 by " << std::scientific << n - 1.0;
    throw NormalizationError(msg.str());
  }
  std::vector<double> f(psi.values.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = psi.grid.node(j);
    f[j] = r * r * std::norm(psi.values[j]);
  }
  return integrate_transverse(psi.grid, f);
}

double longitudinal_average_w2(const BeamGeometry& g) {
  const auto& f = g.field();
  const double w02 = g.w0() * g.w0();
  const double ratio = f.w_m_squared / w02;
  return 0.5 * w02 * (1.0 + ratio * ratio);
}

double longitudinal_average_w2_numeric(const BeamGeometry& g, int points) {
  const auto beam = BeamFamily::general(BeamQuantumNumbers{}, g);
  const double period = 2.0 * kPi * g.field().z_m;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = beam.parameters_at(period * i / points).w;
    sum += w * w;
  }
  return sum / points;
}

double quadrupole(const BeamQuantumNumbers& qn, double w0_nm) {
  const double w0 = to_metres(w0_nm);
  return kCodata2018.elementary_charge * w0 * w0 / 2.0 * qn.N();
}

double general_lambda(const BeamQuantumNumbers& qn, const BeamGeometry& g) {
  const double w02 = g.w0() * g.w0();
  double lambda = qn.N() / (g.k() * w02);
  if (g.in_field()) {
    const double wm2 = g.field().w_m_squared;
    lambda += qn.N() / g.k() * w02 / (wm2 * wm2) + 2.0 * qn.orbital_spin_shift() / (g.k() * wm2);
  }
  return lambda;
}

double lambda_value(const BeamFamily& family) {
  switch (family.kind()) {
    case FamilyKind::FreeLG:
      return free_lambda(family.quantum_numbers(), family.geometry());
    case FamilyKind::LandauParaxial:
      return landau_lambda(family.quantum_numbers(), family.geometry());
    case FamilyKind::GeneralLG:
      return general_lambda(family.quantum_numbers(), family.geometry());
  }
  return 0.0;
}

double mean_phase_rate(const BeamFamily& family, double z, const RadialGrid& grid) {
  const auto& g = family.geometry();
  const double h = 1e-4 * (g.in_field() ? g.field().z_m : g.z_R());
  std::vector<double> num(grid.size()), den(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    const cplx psi = evaluate(family, z, r);
    const cplx dpsi = (evaluate(family, z + h, r) - evaluate(family, z - h, r)) / (2.0 * h);
    num[j] = (std::conj(psi) * dpsi).imag();
    den[j] = std::norm(psi);
  }
  return integrate_transverse(grid, num) / integrate_transverse(grid, den);
}

VelocityMass velocity_and_mass(double lambda, const BeamGeometry& g) {
  const double ratio = lambda / g.k();
  if (ratio >= 0.1)
    throw ParaxialityError("lambda/k = " + std::to_string(ratio) + " violates paraxiality");
  const double k = g.k();
  const double kk = g.compton_k();
  const double vz = c_light() * k / std::sqrt(k * k + kk * kk) * (1.0 - ratio);
  const double excess = mass_excess_eV(lambda, k);
  return {vz, kCodata2018.electron_mass_energy + excess, excess, ratio, ratio > 1e-3};
}

VelocityMass velocity_and_mass(const BeamFamily& family) {
  return velocity_and_mass(lambda_value(family), family.geometry());
}

double velocity_spacing(const BeamFamily& family) {
  const auto& g = family.geometry();
  const auto& qn = family.quantum_numbers();
  const double k = g.k() / kMetresPerUnit;
  const double kk = g.compton_k() / kMetresPerUnit;
  const double base = c_light() / (k * std::sqrt(k * k + kk * kk));
  switch (family.kind()) {
    case FamilyKind::FreeLG:
      return base / (to_metres(g.w0()) * to_metres(g.w0()));
    case FamilyKind::LandauParaxial:
      return base / (to_metres(g.field().w_m) * to_metres(g.field().w_m));
    case FamilyKind::GeneralLG: {
      const double w02 = g.w0() * g.w0();
      const double wm2 = g.field().w_m_squared;
      const double bracket =
          1.0 + (w02 * w02) / (wm2 * wm2) + 2.0 * qn.orbital_spin_shift() * w02 / (qn.N() * wm2);
      return base / (to_metres(g.w0()) * to_metres(g.w0())) * bracket;
    }
  }
  return 0.0;
}

MassSpacing mass_spacing(const BeamFamily& family) {
  const auto& g = family.geometry();
  const double hc = kCodata2018.hbar_c_eV_nm();
  const double m = kCodata2018.electron_mass_energy;
  const double w2 =
      family.kind() == FamilyKind::LandauParaxial ? g.field().w_m_squared : g.w0() * g.w0();
  const double approx = hc * hc / (m * w2);
  const double exact = mass_excess_eV(family_lambda_for_N(family, 1), g.k()) -
                       mass_excess_eV(family_lambda_for_N(family, 0), g.k());
  return {approx, exact};
}

PeriodPitch period_and_pitch(const BeamGeometry& g) {
  const double period = kPi * to_metres(g.field().z_m);

  // Helix pitch from classical relativistic kinematics in SI.
  const auto& cc = kCodata2018;
  const double c = cc.c;
  const double p = cc.hbar * wavenumber_per_metre(g.lab().kinetic_eV);  // kg m/s
  const double rest = cc.electron_mass_energy * cc.elementary_charge;   // J
  const double energy = std::sqrt(p * p * c * c + rest * rest);        // J
  const double omega_c = cc.elementary_charge * g.lab().B_tesla * c * c / energy;
  const double v = p * c * c / energy;
  return {period, 2.0 * kPi * v / omega_c};
}

double kinetic_oam(const BeamFamily& family, double z) {
  const auto& g = family.geometry();
  const double ell = family.quantum_numbers().ell;
  if (!g.in_field()) return ell;
  return ell + 0.5 * g.field().inverse_area * r2_mean(family, z);
}

double kinetic_oam(const RadialWavefunction& psi, const BeamGeometry& g) {
  if (!g.in_field()) return psi.ell;
  return psi.ell + 0.5 * g.field().inverse_area * r2_mean(psi);
}

ObservableSet observe(const BeamFamily& family, double z) {
  const auto psi = sample(family, z, local_grid(family, z));
  double norm_raw = 0.0;
  {
    std::vector<cplx> raw(psi.grid.size());
    for (std::size_t j = 0; j < raw.size(); ++j) raw[j] = evaluate(family, z, psi.grid.node(j));
    norm_raw = norm_squared(psi.grid, raw);
  }
  const auto& g = family.geometry();
  const double waist =
      family.kind() == FamilyKind::LandauParaxial ? g.field().w_m : g.w0();
  const auto vm = velocity_and_mass(family);
  const double r2 = r2_mean(family, z);
  return {norm_raw,
          to_metres(to_metres(r2)),
          quadrupole(family.quantum_numbers(), waist),
          vm.vz_m_per_s,
          vm.m_eff_eV,
          lambda_value(family) / kMetresPerUnit,
          kinetic_oam(family, z)};
}

}  // namespace twisted
