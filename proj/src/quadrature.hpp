#pragma once

#include <functional>
#include <vector>

namespace fplate {

// Quadrature rule on a reference interval: abscissae plus matching weights.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree <= 2n-1.
// Rules are cached per n; lookups are thread-safe.
const QuadratureRule& gauss_legendre_rule(int n);

// Gauss-Jacobi rule for the weight u^(-alpha) on [0, 1], i.e.
//   integral_0^1 u^(-alpha) f(u) du  ~=  sum_i w_i f(u_i),
// exact for polynomial f of degree <= 2n-1.  Requires 0 < alpha < 1.
QuadratureRule gauss_jacobi_rule(int n, double alpha);

// Weighted power moments of the end-point-singular kernel:
//   moments[k] = integral_a^b |s - x_sing|^(-alpha) s^k ds,  k = 0..poly_degree,
// where x_sing is the interval end named by singular_at_a.  Closed form.
// Requires 0 < alpha < 1 and a < b; the singular end may touch the interval
// (x_sing == a or == b) since the moments remain finite for alpha < 1.
std::vector<double> singular_moment_integrate(int poly_degree, double alpha,
                                              double a, double b,
                                              bool singular_at_a);

// Normalized panel moments used by the assembly path:
//   tau_moments[m] = integral_ua^ub u^(-alpha) * ((u - ua)/(ub - ua))^m du.
// Closed form; valid for 0 <= ua < ub, 0 < alpha < 1.
void power_tau_moments(double alpha, double ua, double ub, int max_degree,
                       double* out);

// Coefficients b of p(tau) = sum_m b[m] tau^m interpolating samples taken at
// the uniform nodes tau_i = i/degree (tau_0 = 0 for degree 0).
void fit_poly_uniform(const double* samples, int degree, double* coeff);

// Adaptive evaluation of integral_0^l u^(-alpha) g(u) du for smooth-enough g
// with an integrable end-point singularity at u = 0.  Relative tolerance is
// interpreted against the accumulated estimate.  Throws std::runtime_error
// when the requested tolerance cannot be met.
double adaptive_power_integral(const std::function<double(double)>& g,
                               double l, double alpha, double rel_tol);

}  // namespace fplate
