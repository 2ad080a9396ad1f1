#include "twisted/laguerre.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "twisted/errors.hpp"

namespace twisted {

namespace {

double laguerre_value(int n, int alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int j = 0; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

LaguerreEval laguerre(int n, int alpha, double x) {
  if (n < 0 || alpha < 0)
    throw DomainError("laguerre: n and alpha must be non-negative (n=" + std::to_string(n) +
                      ", alpha=" + std::to_string(alpha) + ")");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("laguerre: x must be finite and >= 0");
  return LaguerreEval{n, alpha, laguerre_value(n, alpha, x), -laguerre_value(n - 1, alpha + 1, x),
                      laguerre_value(n - 2, alpha + 2, x)};
}

double norm_constant(int n, int ell) {
  if (n < 0) throw DomainError("norm_constant: n must be non-negative");
  const int a = std::abs(ell);
  const double log_ratio = std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0);
  return std::sqrt(2.0 / std::numbers::pi * std::exp(log_ratio));
}

void normalized_laguerre_functions(int alpha, double x, std::span<double> out) {
  if (alpha < 0) throw DomainError("normalized_laguerre_functions: alpha must be non-negative");
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError("normalized_laguerre_functions: x must be finite and >= 0");
  if (out.empty()) return;
  if (x == 0.0 && alpha > 0) {
    for (auto& v : out) v = 0.0;
    return;
  }

  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);
  // log of the j = 0 function; recurrence then runs on O(1) numbers.
  double log_scale = (x > 0.0 ? 0.5 * alpha * std::log(x) : 0.0) - 0.5 * x -
                     0.5 * std::lgamma(alpha + 1.0);
  double prev = 0.0;
  double cur = 1.0;
  const auto emit = [&](std::size_t j, double p) {
    out[j] = p == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(p)) + log_scale), p);
  };
  emit(0, cur);
  for (std::size_t j = 0; j + 1 < out.size(); ++j) {
    const double jj = static_cast<double>(j);
    const double next = ((2.0 * jj + 1.0 + alpha - x) * cur - std::sqrt(jj * (jj + alpha)) * prev) /
                        std::sqrt((jj + 1.0) * (jj + 1.0 + alpha));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += log_rescale;
    }
    emit(j + 1, cur);
  }
}

}  // namespace twisted
