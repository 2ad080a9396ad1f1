#include "twisted/beams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "twisted/laguerre.hpp"

namespace twisted {

namespace {

constexpr double kPi = std::numbers::pi;

// Width ratio a = w_m^2 / w0^2, formed from w_m/w0 so that w0 == w_m gives a == 1 exactly.
double width_ratio(const BeamGeometry& g) {
  const double q = g.field().w_m / g.w0();
  return q * q;
}

// arctan(a tan u) continued across every half period so that it grows
// monotonically (and continuously) with u.
double unwrapped_arctan(double a, double u) {
  const double m = std::round(u / kPi);
  const double v = u - m * kPi;
  return std::atan2(a * std::sin(v), std::cos(v)) + m * kPi;
}

struct ProfileTerms {
  double value;  // transverse_profile
  double d_dw;   // its derivative with respect to w
};

ProfileTerms profile_terms(int n, int ell, double w, double r) {
  const int alpha = std::abs(ell);
  const double x = 2.0 * r * r / (w * w);
  const auto lag = laguerre(n, alpha, x);
  const double c = norm_constant(n, ell);
  const double envelope = (alpha == 0 ? 1.0 : std::pow(x, 0.5 * alpha)) * std::exp(-0.5 * x);
  const double value = c / w * envelope * lag.value;
  const double d_dw = c / (w * w) * envelope * ((x - alpha - 1.0) * lag.value - 2.0 * x * lag.d1);
  return {value, d_dw};
}

}  // namespace

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::FreeLG:
      return "FreeLG";
    case FamilyKind::LandauParaxial:
      return "LandauParaxial";
    case FamilyKind::GeneralLG:
      return "GeneralLG";
  }
  return "?";
}

BeamFamily::BeamFamily(FamilyKind kind, const BeamQuantumNumbers& qn, const BeamGeometry& geometry)
    : kind_(kind), qn_(qn), geometry_(geometry) {
  if (qn.n < 0) throw DomainError("radial index n must be non-negative");
}

BeamFamily BeamFamily::free_lg(const BeamQuantumNumbers& qn, const BeamGeometry& geometry) {
  return BeamFamily(FamilyKind::FreeLG, qn, geometry);
}

BeamFamily BeamFamily::landau(const BeamQuantumNumbers& qn, const BeamGeometry& geometry) {
  if (!geometry.in_field()) throw FamilyError("LandauParaxial requires B > 0");
  return BeamFamily(FamilyKind::LandauParaxial, qn, geometry);
}

BeamFamily BeamFamily::general(const BeamQuantumNumbers& qn, const BeamGeometry& geometry) {
  if (!geometry.in_field())
    throw FamilyError("GeneralLG requires B > 0; construct a FreeLG beam for field-free space");
  return BeamFamily(FamilyKind::GeneralLG, qn, geometry);
}

BeamParameters BeamFamily::parameters_at(double z) const {
  const double N = qn_.N();
  switch (kind_) {
    case FamilyKind::FreeLG: {
      const double zr = geometry_.z_R();
      const double w = geometry_.w0() * std::sqrt(1.0 + (z / zr) * (z / zr));
      return {z, w, z / (z * z + zr * zr), N * std::atan(z / zr)};
    }
    case FamilyKind::LandauParaxial: {
      const auto& f = geometry_.field();
      return {z, f.w_m, 0.0, (N + qn_.orbital_spin_shift()) * z / f.z_m};
    }
    case FamilyKind::GeneralLG: {
      const auto& f = geometry_.field();
      const double a = width_ratio(geometry_);
      const double u = z / f.z_m;
      const double s = std::sin(u);
      const double d = 1.0 + (a * a - 1.0) * s * s;
      const double w = geometry_.w0() * std::sqrt(d);
      const double inv_r = (a * a - 1.0) * std::sin(2.0 * u) / (2.0 * f.z_m * d);
      const double gouy = N * unwrapped_arctan(a, u) + qn_.orbital_spin_shift() * u;
      return {z, w, inv_r, gouy};
    }
  }
  return {};
}

ParameterRates BeamFamily::rates_at(double z) const {
  const double N = qn_.N();
  switch (kind_) {
    case FamilyKind::FreeLG: {
      const double zr = geometry_.z_R();
      const double q = z * z + zr * zr;
      const double dw = geometry_.w0() * (z / (zr * zr)) / std::sqrt(1.0 + z * z / (zr * zr));
      return {dw, (zr * zr - z * z) / (q * q), N * zr / q};
    }
    case FamilyKind::LandauParaxial: {
      const auto& f = geometry_.field();
      return {0.0, 0.0, (N + qn_.orbital_spin_shift()) / f.z_m};
    }
    case FamilyKind::GeneralLG: {
      const auto& f = geometry_.field();
      const double a = width_ratio(geometry_);
      const double u = z / f.z_m;
      const double s = std::sin(u);
      const double s2 = std::sin(2.0 * u);
      const double d = 1.0 + (a * a - 1.0) * s * s;
      const double w0 = geometry_.w0();
      const double w = w0 * std::sqrt(d);
      const double dw = w0 * w0 * (a * a - 1.0) * s2 / (2.0 * f.z_m * w);
      const double dinv_r = (a * a - 1.0) / (2.0 * f.z_m * f.z_m) *
                            (2.0 * std::cos(2.0 * u) * d - (a * a - 1.0) * s2 * s2) / (d * d);
      const double dgouy = (N * a / d + qn_.orbital_spin_shift()) / f.z_m;
      return {dw, dinv_r, dgouy};
    }
  }
  return {};
}

double BeamFamily::max_width(double z_hint) const {
  switch (kind_) {
    case FamilyKind::FreeLG:
      return parameters_at(z_hint).w;
    case FamilyKind::LandauParaxial:
      return geometry_.field().w_m;
    case FamilyKind::GeneralLG: {
      const double w0 = geometry_.w0();
      return std::max(w0, geometry_.field().w_m_squared / w0);
    }
  }
  return 0.0;
}

double transverse_profile(int n, int ell, double w, double r) {
  return profile_terms(n, ell, w, r).value;
}

cplx evaluate(const BeamFamily& family, double z, double r) {
  const auto p = family.parameters_at(z);
  const auto& qn = family.quantum_numbers();
  const double amp = transverse_profile(qn.n, qn.ell, p.w, r);
  const double phase = 0.5 * family.geometry().k() * r * r * p.inv_R - p.gouy;
  return std::polar(amp, phase);
}

cplx evaluate_dz(const BeamFamily& family, double z, double r) {
  const auto p = family.parameters_at(z);
  const auto d = family.rates_at(z);
  const auto& qn = family.quantum_numbers();
  const auto t = profile_terms(qn.n, qn.ell, p.w, r);
  const double k = family.geometry().k();
  const cplx carrier = std::polar(1.0, 0.5 * k * r * r * p.inv_R - p.gouy);
  const double dphase = 0.5 * k * r * r * d.dinv_R - d.dgouy;
  return carrier * cplx(t.d_dw * d.dw, t.value * dphase);
}

RadialGrid default_grid(const BeamFamily& family, double z, int points) {
  return RadialGrid::gauss_legendre(8.0 * family.max_width(z), points);
}

RadialGrid local_grid(const BeamFamily& family, double z, int points) {
  return RadialGrid::gauss_legendre(8.0 * family.parameters_at(z).w, points);
}

RadialWavefunction sample(const BeamFamily& family, double z, const RadialGrid& grid) {
  const double w = family.parameters_at(z).w;
  // Tolerate rounding in grids built from the same 8 w(z) rule.
  if (grid.r_max() < 8.0 * w * (1.0 - 1e-12))
    throw GridCoverageError("grid extent " + std::to_string(grid.r_max()) +
                            " nm does not cover 8 w(z) = " + std::to_string(8.0 * w) + " nm");

  RadialWavefunction psi{family.quantum_numbers().ell, z, grid, {}};
  psi.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) psi.values[j] = evaluate(family, z, grid.node(j));

  const double raw = psi.norm();
  if (!(std::abs(raw - 1.0) < 1e-2))
    throw GridCoverageError("grid does not resolve the beam profile (discrete norm " +
                            std::to_string(raw) + ")");
  const double scale = 1.0 / std::sqrt(raw);
  for (auto& v : psi.values) v *= scale;
  return psi;
}

double OdeResidualReport::max() const { return std::max({width_curvature, curvature, gouy}); }

OdeResidualReport check_parameter_odes(const BeamFamily& family,
                                       std::span<const double> z_samples) {
  if (family.kind() != FamilyKind::GeneralLG)
    throw FamilyError(std::string("check_parameter_odes needs GeneralLG, got ") +
                      to_string(family.kind()));
  const auto& g = family.geometry();
  const auto& f = g.field();
  const auto& qn = family.quantum_numbers();
  const double k = g.k();
  const double w0 = g.w0();
  const double N = qn.N();
  const double h = f.z_m * 1e-6;
  const double wm4 = f.w_m_squared * f.w_m_squared;

  OdeResidualReport rep;
  for (const double z : z_samples) {
    const auto p = family.parameters_at(z);
    const auto lo = family.parameters_at(z - h);
    const auto hi = family.parameters_at(z + h);
    const double dw = (hi.w - lo.w) / (2.0 * h);
    const double dinv_r = (hi.inv_R - lo.inv_R) / (2.0 * h);
    const double dgouy = (hi.gouy - lo.gouy) / (2.0 * h);
    const double w2 = p.w * p.w;

    const double r1 = std::abs(p.inv_R - dw / p.w) * g.z_R();
    const double r2 = std::abs(k * k * p.inv_R * p.inv_R + k * k * dinv_r - 4.0 / (w2 * w2) +
                               4.0 / wm4) *
                      (w0 * w0 * w0 * w0) / 4.0;
    const double r3 =
        std::abs(2.0 * k * dgouy - 4.0 * qn.orbital_spin_shift() / f.w_m_squared - 4.0 * N / w2) *
        (w0 * w0) / (4.0 * N);
    rep.width_curvature = std::max(rep.width_curvature, r1);
    rep.curvature = std::max(rep.curvature, r2);
    rep.gouy = std::max(rep.gouy, r3);
  }
  return rep;
}

}  // namespace twisted
