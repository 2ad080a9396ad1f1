#pragma once

#include <cmath>
#include <numbers>

#include "twisted/beams.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// 200 keV electrons in 1 T with a 1 nm waist.
inline twisted::BeamGeometry lab_geometry(double B = 1.0, double w0_nm = 1.0) {
  return twisted::geometry_from_lab({B, 200e3, w0_nm * 1e-9});
}

// Same field and energy with w0 = ratio * w_m.
inline twisted::BeamGeometry ratio_geometry(double ratio, double B = 1.0) {
  const auto g = lab_geometry(B);
  return g.with_waist(ratio * g.field().w_m);
}

}  // namespace testing
