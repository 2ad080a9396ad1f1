#include "twisted/grid.hpp"

#include <cmath>
#include <numbers>

#include "twisted/errors.hpp"

namespace twisted {

RadialGrid::RadialGrid(Kind kind, double r_max, std::vector<double> nodes,
                       std::vector<double> weights, double spacing)
    : kind_(kind),
      r_max_(r_max),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      spacing_(spacing) {}

RadialGrid RadialGrid::gauss_legendre(double r_max, int points) {
  if (!(r_max > 0.0) || points < 1) throw GridCoverageError("gauss_legendre: bad extent or size");
  const auto m = static_cast<std::size_t>(points);
  std::vector<double> x(m), w(m);
  // Newton on P_m from the Chebyshev guess; roots are symmetric so solve half.
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= m; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jj = static_cast<double>(j);
        p0 = ((2.0 * jj - 1.0) * z * p1 - (jj - 1.0) * p2) / jj;
      }
      dp = static_cast<double>(m) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = 0.5 * r_max * (x[i] + 1.0);
    w[i] *= 0.5 * r_max;
  }
  return RadialGrid(Kind::GaussLegendre, r_max, std::move(x), std::move(w), 0.0);
}

RadialGrid RadialGrid::uniform_staggered(double r_max, int points) {
  if (!(r_max > 0.0) || points < 2) throw GridCoverageError("uniform_staggered: bad extent or size");
  const auto m = static_cast<std::size_t>(points);
  const double dr = r_max / static_cast<double>(m);
  std::vector<double> x(m), w(m, dr);
  for (std::size_t j = 0; j < m; ++j) x[j] = (static_cast<double>(j) + 0.5) * dr;
  return RadialGrid(Kind::UniformStaggered, r_max, std::move(x), std::move(w), dr);
}

double integrate_transverse(const RadialGrid& grid, std::span<const double> f) {
  const auto r = grid.nodes();
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += f[j] * r[j] * w[j];
  return 2.0 * std::numbers::pi * sum;
}

cplx integrate_transverse(const RadialGrid& grid, std::span<const cplx> f) {
  const auto r = grid.nodes();
  const auto w = grid.weights();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += f[j] * (r[j] * w[j]);
  return 2.0 * std::numbers::pi * sum;
}

double norm_squared(const RadialGrid& grid, std::span<const cplx> psi) {
  const auto r = grid.nodes();
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) sum += std::norm(psi[j]) * r[j] * w[j];
  return 2.0 * std::numbers::pi * sum;
}

double l2_distance(const RadialGrid& grid, std::span<const cplx> a, std::span<const cplx> b) {
  const auto r = grid.nodes();
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a[j] - b[j]) * r[j] * w[j];
  return std::sqrt(2.0 * std::numbers::pi * sum);
}

}  // namespace twisted
