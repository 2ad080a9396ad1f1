#pragma once

#include <complex>
#include <span>
#include <vector>

namespace twisted {

using cplx = std::complex<double>;

// Radial nodes on (0, r_max) with quadrature weights for plain dr.
// Transverse integrals use integrate_transverse, which adds the 2 pi r factor.
class RadialGrid {
 public:
  enum class Kind { GaussLegendre, UniformStaggered };

  RadialGrid() = default;

  // Gauss-Legendre nodes mapped onto [0, r_max].
  static RadialGrid gauss_legendre(double r_max, int points);
  // r_j = (j - 1/2) dr, j = 1..points, dr = r_max / points; midpoint weights.
  static RadialGrid uniform_staggered(double r_max, int points);

  Kind kind() const { return kind_; }
  double r_max() const { return r_max_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(std::size_t j) const { return nodes_[j]; }
  // Uniform spacing; only meaningful for UniformStaggered.
  double spacing() const { return spacing_; }

 private:
  RadialGrid(Kind kind, double r_max, std::vector<double> nodes, std::vector<double> weights,
             double spacing);

  Kind kind_ = Kind::UniformStaggered;
  double r_max_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double spacing_ = 0.0;
};

// sum_j f_j * 2 pi r_j * w_j
double integrate_transverse(const RadialGrid& grid, std::span<const double> f);
cplx integrate_transverse(const RadialGrid& grid, std::span<const cplx> f);

// Transverse norm integral of |psi|^2.
double norm_squared(const RadialGrid& grid, std::span<const cplx> psi);

// L2 distance ||a - b|| with the transverse measure.
double l2_distance(const RadialGrid& grid, std::span<const cplx> a, std::span<const cplx> b);

}  // namespace twisted
