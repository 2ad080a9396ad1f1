#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "twisted/modes.hpp"
#include "twisted/observables.hpp"

using namespace twisted;
using testing::kPi;
using testing::rel;

namespace {

// Overlap of two normalised Gaussians of widths a and b by plain midpoint
// quadrature in double-density steps.
double gaussian_overlap(double a, double b) {
  const double r_max = 10.0 * std::max(a, b);
  const int steps = 200000;
  const double h = r_max / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double r = (i + 0.5) * h;
    const double fa = std::sqrt(2.0 / kPi) / a * std::exp(-r * r / (a * a));
    const double fb = std::sqrt(2.0 / kPi) / b * std::exp(-r * r / (b * b));
    sum += fa * fb * 2.0 * kPi * r * h;
  }
  return sum;
}

}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("a Landau mode decomposes onto itself") {
    const auto g = testing::ratio_geometry(0.5);
    const auto beam = BeamFamily::landau({3, 1, Spin::Up}, g);
    const auto c = decompose(sample(beam, 0.0, default_grid(beam)), g, 16);
    CHECK(c.ell == 1);
    CHECK(std::abs(std::abs(c.coeffs[3]) - 1.0) < 1e-10);
    for (int n = 0; n <= 16; ++n)
      if (n != 3) CHECK(std::abs(c.coeffs[n]) < 1e-10);
  }

  TEST_CASE("matched free beam is a single mode") {
    const auto g = testing::ratio_geometry(1.0);
    for (const BeamQuantumNumbers qn : {BeamQuantumNumbers{0, 0, Spin::Up}, {2, -3, Spin::Down}}) {
      const auto beam = BeamFamily::free_lg(qn, g);
      const auto c = decompose(sample(beam, 0.0, default_grid(beam)), g, 12);
      CHECK(std::abs(std::abs(c.coeffs[qn.n]) - 1.0) < 1e-10);
      CHECK(std::abs(c.completeness - 1.0) < 1e-10);
    }
  }

  TEST_CASE("ground-state overlap of two Gaussians") {
    for (double ratio : {0.5, 0.8, 1.7}) {
      const auto g = testing::ratio_geometry(ratio);
      const double w0 = g.w0(), wm = g.field().w_m;
      const auto beam = BeamFamily::free_lg({0, 0, Spin::Up}, g);
      const double r_max = 8.0 * std::max(w0, wm);
      const auto c = decompose(sample(beam, 0.0, RadialGrid::gauss_legendre(r_max, 512)), g, 64);
      const double closed = std::pow(2.0 * w0 * wm / (w0 * w0 + wm * wm), 2);
      CHECK(rel(std::norm(c.coeffs[0]), closed) < 1e-12);
      CHECK(rel(std::norm(c.coeffs[0]), std::pow(gaussian_overlap(w0, wm), 2)) < 1e-8);
    }
  }

  TEST_CASE("evolution is reversible and keeps |c_n|") {
    const auto g = testing::ratio_geometry(0.5);
    const auto beam = BeamFamily::free_lg({1, 2, Spin::Up}, g);
    const auto c = decompose(sample(beam, 0.0, default_grid(beam)), g, 128);
    const double z = 2.37 * g.field().z_m;
    const auto there = evolve_coefficients(c, z, g, Spin::Up);
    CHECK(there.z == z);
    const auto back = evolve_coefficients(there, 0.0, g, Spin::Up);
    for (std::size_t n = 0; n < c.coeffs.size(); ++n) {
      CHECK(std::abs(std::norm(there.coeffs[n]) - std::norm(c.coeffs[n])) < 1e-14);
      CHECK(std::abs(back.coeffs[n] - c.coeffs[n]) < 1e-12);
    }
  }

  TEST_CASE("Landau Gouy phase") {
    const auto g = testing::ratio_geometry(0.5);
    const double zm = g.field().z_m;
    CHECK(landau_gouy(0, 0, 0.5, zm, g) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(landau_gouy(2, -3, -0.5, 2.0 * zm, g) == doctest::Approx(2.0 * 4.0).epsilon(1e-15));
    CHECK(landau_gouy(1, 2, 0.5, 0.0, g) == 0.0);
  }

  TEST_CASE("Parseval and the basis path against the closed form") {
    const auto g = testing::ratio_geometry(0.5);
    const auto beam = BeamFamily::general({1, 2, Spin::Up}, g);
    const auto grid = RadialGrid::gauss_legendre(8.0 * beam.max_width(), 512);
    const auto c = decompose_adaptive(sample(beam, 0.0, grid), g);
    CHECK(c.completeness > 0.999);
    CHECK(c.completeness <= 1.0 + 1e-10);
    for (double u : {0.4, 1.0, 2.2}) {
      const double z = u * g.field().z_m;
      const auto psi = evolve_in_basis(c, z, g, Spin::Up, grid);
      CHECK(std::abs(psi.norm() - c.completeness) < 1e-10);
      CHECK(l2_distance(grid, psi.values, sample(beam, z, grid).values) < 1e-5);
    }
  }

  TEST_CASE("truncation and preconditions") {
    const auto g = testing::ratio_geometry(0.25);
    const auto beam = BeamFamily::free_lg({0, 1, Spin::Up}, g);
    const auto grid = RadialGrid::gauss_legendre(8.0 * g.field().w_m_squared / g.w0(), 512);
    const auto psi = sample(beam, 0.0, grid);
    try {
      (void)decompose(psi, g, 2);
      FAIL("expected truncation");
    } catch (const TruncationError& e) {
      CHECK(e.suggested_n_max() == 4);
    }
    CHECK(decompose_adaptive(psi, g, 2).completeness > 0.999);

    auto scaled = psi;
    for (auto& v : scaled.values) v *= 2.0;
    CHECK_THROWS_AS(decompose(scaled, g, 64), NormalizationError);
    CHECK_THROWS_AS(decompose(psi, testing::lab_geometry(0.0), 64), FamilyError);
  }

  TEST_CASE("matched injection keeps the OAM sum at 2N") {
    const auto g = testing::ratio_geometry(1.0);
    const auto pair = penetration_pair(0, 2, g.field().w_m, g, Spin::Up);
    REQUIRE(pair.oam_sum.size() == 129);
    for (double s : pair.oam_sum) CHECK(std::abs(s - 6.0) < 1e-8);
    CHECK(rel(pair.positive.fitted_waist_nm, g.field().w_m) < 1e-8);
  }

  TEST_CASE("l = 0 injection has positive kinetic OAM") {
    const auto g = testing::ratio_geometry(1.0);
    const auto rep = penetration_experiment(1, 0, 0.5 * g.field().w_m, g, Spin::Down);
    for (double v : rep.kinetic_oam) CHECK(v > 0.0);
    CHECK(rep.mean_kinetic_oam > 0.0);
  }

  TEST_CASE("<r^2> oscillates with period pi z_m after injection") {
    const auto g = testing::ratio_geometry(1.0);
    const auto rep = penetration_experiment(1, 2, 0.5 * g.field().w_m, g, Spin::Up);
    REQUIRE(rep.r2_nm2.size() == 129);
    for (std::size_t i = 0; i + 64 < rep.r2_nm2.size(); ++i)
      CHECK(rel(rep.r2_nm2[i], rep.r2_nm2[i + 64]) < 1e-9);
    // Starts at the injected value N w0^2 / 2.
    const double w0 = 0.5 * g.field().w_m;
    CHECK(rel(rep.r2_nm2[0], 2.5 * w0 * w0) < 1e-9);
    CHECK(rel(rep.fitted_waist_nm, w0) < 1e-6);
  }

  TEST_CASE("OAM sum of a +-l pair stays positive") {
    const auto g = testing::ratio_geometry(1.0);
    const double wm = g.field().w_m;
    PenetrationOptions opt;
    opt.periods = 1.0;
    opt.samples_per_period = 32;
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 5; ++l)
        for (double ratio : {0.25, 0.5, 1.0, 2.0}) {
          CAPTURE(n);
          CAPTURE(l);
          CAPTURE(ratio);
          CHECK(penetration_pair(n, l, ratio * wm, g, Spin::Up, opt).min_oam_sum > 0.0);
        }
  }
}
