#pragma once

#include <span>

namespace twisted {

// L_n^alpha(x) together with its first two x-derivatives.
struct LaguerreEval {
  int n;
  int alpha;
  double value;
  double d1;
  double d2;
};

// Generalized Laguerre polynomial by the three-term recurrence in n.
// d1 = -L_{n-1}^{alpha+1}, d2 = L_{n-2}^{alpha+2}. Throws DomainError for
// negative n, alpha or x, and for non-finite x.
LaguerreEval laguerre(int n, int alpha, double x);

// C_{n,l} = sqrt(2 n! / (pi (n+|l|)!)), via log-gamma.
double norm_constant(int n, int ell);

// Fills out[j] = sqrt(j!/(j+alpha)!) x^{alpha/2} e^{-x/2} L_j^alpha(x) for
// j = 0..out.size()-1. Stable for large n and x (internally rescaled), so it
// can feed high-order mode expansions where L_n itself would overflow.
void normalized_laguerre_functions(int alpha, double x, std::span<double> out);

}  // namespace twisted
