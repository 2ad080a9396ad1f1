#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "twisted/beams.hpp"
#include "twisted/laguerre.hpp"

using namespace twisted;
using testing::kPi;
using testing::rel;

TEST_SUITE("beams") {
  TEST_CASE("general beam at the waist") {
    const auto g = testing::ratio_geometry(0.5);
    const auto p = BeamFamily::general({1, 2, Spin::Up}, g).parameters_at(0.0);
    CHECK(p.w == g.w0());
    CHECK(p.inv_R == 0.0);
    CHECK(p.gouy == 0.0);
  }

  TEST_CASE("general beam peaks at w_m^2/w0 a quarter period in") {
    const auto g = testing::ratio_geometry(0.5);
    const auto& f = g.field();
    const auto p = BeamFamily::general({1, 2, Spin::Up}, g).parameters_at(kPi * f.z_m / 2.0);
    CHECK(rel(p.w, 2.0 * f.w_m) < 1e-14);
    CHECK(std::abs(p.inv_R) * f.z_m < 1e-14);
  }

  TEST_CASE("w0 = w_m reduces to the Landau mode") {
    const auto g = testing::ratio_geometry(1.0);
    const auto& f = g.field();
    for (Spin s : {Spin::Up, Spin::Down}) {
      const BeamQuantumNumbers qn{2, -3, s};
      const auto general = BeamFamily::general(qn, g);
      const auto landau = BeamFamily::landau(qn, g);
      for (double u : {-7.0, -1.2, 0.0, 0.4, 1.5707963267948966, 3.0, 11.0}) {
        const auto p = general.parameters_at(u * f.z_m);
        const auto q = landau.parameters_at(u * f.z_m);
        CHECK(p.w == f.w_m);
        CHECK(p.inv_R == 0.0);
        const double expected = (qn.N() + qn.orbital_spin_shift()) * u;
        CHECK(std::abs(p.gouy - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
        CHECK(std::abs(q.gouy - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
      }
    }
  }

  TEST_CASE("free beam at the Rayleigh length") {
    const auto g = testing::lab_geometry(0.0, 2.0);
    const BeamQuantumNumbers qn{1, 2, Spin::Up};
    const auto p = BeamFamily::free_lg(qn, g).parameters_at(g.z_R());
    CHECK(rel(p.w, g.w0() * std::sqrt(2.0)) < 1e-15);
    CHECK(rel(p.gouy, qn.N() * kPi / 4.0) < 1e-15);
    CHECK(rel(p.inv_R, 1.0 / (2.0 * g.z_R())) < 1e-15);
  }

  TEST_CASE("Gouy phase is continuous and increasing across half periods") {
    for (double ratio : {0.3, 0.5, 2.0}) {
      const auto g = testing::ratio_geometry(ratio);
      const auto beam = BeamFamily::general({1, 2, Spin::Up}, g);
      const double zm = g.field().z_m;
      double prev = beam.parameters_at(-3.0 * kPi * zm).gouy;
      const int steps = 6000;
      double worst_jump = 0.0;
      for (int i = 1; i <= steps; ++i) {
        const double z = (-3.0 + 6.0 * i / steps) * kPi * zm;
        const double gouy = beam.parameters_at(z).gouy;
        CHECK(gouy > prev);
        worst_jump = std::max(worst_jump, gouy - prev);
        prev = gouy;
      }
      // Largest rate (N a_max + l + 2s)/z_m times the step.
      const double a = 1.0 / (ratio * ratio);
      const double bound = (5.0 * std::max(a, 1.0 / a) + 3.0) * 6.0 * kPi / steps;
      CHECK(worst_jump <= bound * 1.0001);
    }
  }

  TEST_CASE("family preconditions") {
    const auto free = testing::lab_geometry(0.0);
    CHECK_THROWS_AS(BeamFamily::landau({}, free), FamilyError);
    CHECK_THROWS_AS(BeamFamily::general({}, free), FamilyError);
    CHECK_THROWS_AS(BeamFamily::general({-1, 0, Spin::Up}, testing::lab_geometry()), DomainError);
    CHECK_NOTHROW(BeamFamily::free_lg({}, testing::lab_geometry()));
  }

  TEST_CASE("analytic rates match finite differences") {
    const auto g = testing::ratio_geometry(0.5);
    const double zm = g.field().z_m;
    const auto check_family = [&](const BeamFamily& beam, double scale) {
      for (double u : {-2.0, -0.3, 0.1, 0.9, 1.4, 2.2}) {
        const double z = u * scale, h = 1e-5 * scale;
        const auto r = beam.rates_at(z);
        const auto a = beam.parameters_at(z + h), b = beam.parameters_at(z - h);
        const auto p = beam.parameters_at(z);
        CHECK(std::abs(r.dw - (a.w - b.w) / (2 * h)) * scale / p.w < 1e-8);
        CHECK(std::abs(r.dinv_R - (a.inv_R - b.inv_R) / (2 * h)) * scale * scale < 1e-7);
        CHECK(std::abs(r.dgouy - (a.gouy - b.gouy) / (2 * h)) * scale < 1e-7);
      }
    };
    check_family(BeamFamily::general({1, 2, Spin::Up}, g), zm);
    check_family(BeamFamily::free_lg({1, 2, Spin::Up}, g), g.z_R());
    check_family(BeamFamily::landau({1, -2, Spin::Down}, g), zm);
  }

  TEST_CASE("evaluate_dz matches finite differences of evaluate") {
    const auto g = testing::ratio_geometry(0.5);
    const double zm = g.field().z_m;
    const auto beam = BeamFamily::general({2, -3, Spin::Up}, g);
    for (double u : {0.2, 0.7, 1.9}) {
      const double z = u * zm, h = 1e-5 * zm;
      double worst = 0.0, scale = 0.0;
      for (int j = 1; j < 200; ++j) {
        const double r = j * 4.0 * g.field().w_m / 200.0;
        const cplx fd = (evaluate(beam, z + h, r) - evaluate(beam, z - h, r)) / (2 * h);
        worst = std::max(worst, std::abs(evaluate_dz(beam, z, r) - fd));
        scale = std::max(scale, std::abs(fd));
      }
      CHECK(worst / scale < 1e-7);
    }
  }

  TEST_CASE("ground Landau mode is a static Gaussian") {
    const auto g = testing::lab_geometry();
    const double wm = g.field().w_m;
    const auto beam = BeamFamily::landau({0, 0, Spin::Up}, g);
    const auto grid = default_grid(beam);
    const double c00 = norm_constant(0, 0);
    for (double z : {0.0, 1e5, 3.3e6}) {
      for (std::size_t j = 0; j < grid.size(); j += 7) {
        const double r = grid.node(j);
        const double expected = c00 / wm * std::exp(-r * r / (wm * wm));
        CHECK(std::abs(std::abs(evaluate(beam, z, r)) - expected) <= 1e-14 * c00 / wm);
      }
    }
  }

  TEST_CASE("general beam at the waist coincides with the free beam") {
    const auto g = testing::ratio_geometry(0.5);
    const BeamQuantumNumbers qn{1, 2, Spin::Up};
    const auto general = BeamFamily::general(qn, g);
    const auto free = BeamFamily::free_lg(qn, g);
    const auto grid = default_grid(general);
    const auto a = sample(general, 0.0, grid);
    const auto b = sample(free, 0.0, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(a.values[j] - b.values[j]) < 1e-15);
  }

  TEST_CASE("modulus is self-similar in w(z)") {
    const auto g = testing::ratio_geometry(0.5);
    const auto beam = BeamFamily::general({1, 2, Spin::Up}, g);
    const double z = g.field().z_m;
    const double s = beam.parameters_at(z).w / g.w0();
    for (int j = 1; j < 100; ++j) {
      const double r = j * 0.05 * g.field().w_m;
      const double expected = std::abs(evaluate(beam, 0.0, r / s)) / s;
      CHECK(std::abs(std::abs(evaluate(beam, z, r)) - expected) < 1e-15 / g.w0());
    }
  }

  TEST_CASE("modulus depends on |l|, phase on the sign of l") {
    const auto g = testing::ratio_geometry(0.5);
    const auto plus = BeamFamily::general({1, 3, Spin::Up}, g);
    const auto minus = BeamFamily::general({1, -3, Spin::Up}, g);
    const double z = 0.8 * g.field().z_m, r = 0.6 * g.field().w_m;
    CHECK(std::abs(evaluate(plus, z, r)) == std::abs(evaluate(minus, z, r)));
    CHECK(std::abs(std::arg(evaluate(plus, z, r) / evaluate(minus, z, r))) > 1e-3);
  }

  TEST_CASE("sample normalises and checks coverage") {
    const auto g = testing::ratio_geometry(0.5);
    const auto beam = BeamFamily::general({1, 2, Spin::Up}, g);
    const double z = 0.4 * g.field().z_m;
    const auto psi = sample(beam, z, default_grid(beam, z));
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    CHECK(psi.ell == 2);
    CHECK(psi.z == z);

    const double w = beam.parameters_at(z).w;
    CHECK_THROWS_AS(sample(beam, z, RadialGrid::gauss_legendre(7.0 * w, 512)), GridCoverageError);
    CHECK_THROWS_AS(sample(beam, z, RadialGrid::uniform_staggered(8.0 * w, 6)), GridCoverageError);
    CHECK(local_grid(beam, z).r_max() == 8.0 * w);
    CHECK(default_grid(beam).r_max() == 8.0 * beam.max_width());
  }

  TEST_CASE("parameter ODE residuals") {
    std::vector<double> zs(100);
    for (double ratio : {0.5, 2.0, 0.25}) {
      const auto g = testing::ratio_geometry(ratio);
      for (int i = 0; i < 100; ++i) zs[i] = 2.0 * kPi * g.field().z_m * i / 99.0;
      const auto rep = check_parameter_odes(BeamFamily::general({1, 2, Spin::Up}, g), zs);
      CAPTURE(ratio);
      // The residuals are scaled by w0; for w0 > w_m the beam narrows to
      // w_m^2/w0 and the 1/w^4 term is ratio^4 larger than that scale.
      const double narrowing = std::pow(std::max(1.0, ratio), 4);
      CHECK(rep.width_curvature < 1e-8);
      CHECK(rep.curvature / narrowing < 1e-8);
      CHECK(rep.gouy < 1e-8);
    }
  }

  TEST_CASE("parameter ODE residuals in the degenerate case") {
    const auto g = testing::ratio_geometry(1.0);
    std::vector<double> zs(100);
    for (int i = 0; i < 100; ++i) zs[i] = 2.0 * kPi * g.field().z_m * i / 99.0;
    const auto rep = check_parameter_odes(BeamFamily::general({1, 2, Spin::Down}, g), zs);
    CHECK(rep.width_curvature < 1e-12);
    CHECK(rep.curvature < 1e-12);
    // The Gouy rate comes from differencing a phase of size ~N u; with
    // h = 1e-6 z_m that leaves ~eps N u / 1e-6 of rounding.
    CHECK(rep.gouy < 1e-8);
  }

  TEST_CASE("ODE check rejects other families") {
    const std::vector<double> zs{0.0};
    const auto g = testing::lab_geometry();
    CHECK_THROWS_AS(check_parameter_odes(BeamFamily::free_lg({}, g), zs), FamilyError);
    CHECK_THROWS_AS(check_parameter_odes(BeamFamily::landau({}, g), zs), FamilyError);
  }
}
