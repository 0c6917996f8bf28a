#pragma once

#include <functional>

#include "quadrature.hpp"

namespace fplate {

// Order and horizon of the two-sided fractional derivative at one point.
// l_a extends toward decreasing coordinate, l_b toward increasing coordinate;
// near a boundary the lengths are truncated to the available distance.
struct FractionalParams {
  double alpha = 1.0;
  double l_a = 0.0;
  double l_b = 0.0;

  void validate() const;
};

// Scalar 1D field sampled by value and first integer-order derivative.
struct ScalarField1D {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Power-law attenuation kernel of the Riesz-Caputo derivative,
//   K(x, x') = (1/2) (1-alpha) l^(alpha-1) |x - x'|^(-alpha),
// with l = l_a on the left branch and l = l_b on the right branch.
// Requires alpha < 1 (the alpha = 1 path bypasses kernels entirely) and
// x' strictly inside the horizon, x' != x.
double kernel_eval(double x, double x_prime, const FractionalParams& p);

// Riesz-Caputo derivative of order alpha at x over (x - l_a, x + l_b):
//   D^a f(x) = integral K(x, x') f'(x') dx',
// evaluated by singularity-aware adaptive quadrature.  At alpha = 1 this is
// exactly the integer derivative f'(x).  Reference/oracle path, not the
// production assembly path.
double riesz_caputo_derivative(const ScalarField1D& f, double x,
                               const FractionalParams& p,
                               double rel_tol = 1e-8);

// Riesz Riemann-Liouville derivative of order alpha at x, defined on the
// shifted interval (x - l_b, x + l_a).  Computed via the Caputo form plus the
// end-point terms
//   (1/2)(1-alpha) [ f(x - l_b)/l_b - f(x + l_a)/l_a ].
// At alpha = 1 this is the integer derivative f'(x).
double riesz_rl_derivative(const ScalarField1D& f, double x,
                           const FractionalParams& p, double rel_tol = 1e-8);

}  // namespace fplate
