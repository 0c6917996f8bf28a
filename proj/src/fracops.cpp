#include "fracops.hpp"

#include <cmath>
#include <stdexcept>

namespace fplate {

void FractionalParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("FractionalParams: alpha must be in (0,1]");
  if (l_a < 0.0 || l_b < 0.0 || !(l_a + l_b > 0.0))
    throw std::invalid_argument("FractionalParams: need l_a,l_b >= 0 and l_a+l_b > 0");
}

double kernel_eval(double x, double x_prime, const FractionalParams& p) {
  p.validate();
  if (p.alpha >= 1.0)
    throw std::invalid_argument("kernel_eval: alpha = 1 has no kernel form");
  const double d = x_prime - x;
  if (d == 0.0) throw std::domain_error("kernel_eval: x' coincides with x");
  if (d < 0.0) {
    if (-d >= p.l_a) throw std::domain_error("kernel_eval: x' outside left horizon");
    return 0.5 * (1.0 - p.alpha) * std::pow(p.l_a, p.alpha - 1.0) *
           std::pow(-d, -p.alpha);
  }
  if (d >= p.l_b) throw std::domain_error("kernel_eval: x' outside right horizon");
  return 0.5 * (1.0 - p.alpha) * std::pow(p.l_b, p.alpha - 1.0) *
         std::pow(d, -p.alpha);
}

namespace {

// One side of the convolution: (1/2)(1-a) l^(a-1) * integral_0^l u^-a f'(x -/+ u) du.
// The short-horizon limit l -> 0 equals f'(x)/2.
double caputo_side(const ScalarField1D& f, double x, double l, double alpha,
                   double side_sign, double rel_tol) {
  if (l <= 0.0) return 0.0;
  if (l < 1e-13) return 0.5 * f.deriv(x);
  auto g = [&](double u) { return f.deriv(x + side_sign * u); };
  double integral = adaptive_power_integral(g, l, alpha, rel_tol);
  return 0.5 * (1.0 - alpha) * std::pow(l, alpha - 1.0) * integral;
}

}  // namespace

double riesz_caputo_derivative(const ScalarField1D& f, double x,
                               const FractionalParams& p, double rel_tol) {
  p.validate();
  if (p.alpha == 1.0) return f.deriv(x);
  double left = caputo_side(f, x, p.l_a, p.alpha, -1.0, rel_tol);
  double right = caputo_side(f, x, p.l_b, p.alpha, +1.0, rel_tol);
  double v = left + right;
  if (!std::isfinite(v))
    throw std::runtime_error("riesz_caputo_derivative: non-finite result");
  return v;
}

double riesz_rl_derivative(const ScalarField1D& f, double x,
                           const FractionalParams& p, double rel_tol) {
  p.validate();
  if (p.alpha == 1.0) return f.deriv(x);
  // Caputo-form convolution with swapped lengths (l_b to the left, l_a to the
  // right) plus the end-point terms from the RL <-> Caputo identity.
  double left = caputo_side(f, x, p.l_b, p.alpha, -1.0, rel_tol);
  double right = caputo_side(f, x, p.l_a, p.alpha, +1.0, rel_tol);
  double v = left + right;
  if (p.l_b > 0.0) v += 0.5 * (1.0 - p.alpha) * f.value(x - p.l_b) / p.l_b;
  if (p.l_a > 0.0) v -= 0.5 * (1.0 - p.alpha) * f.value(x + p.l_a) / p.l_a;
  if (!std::isfinite(v))
    throw std::runtime_error("riesz_rl_derivative: non-finite result");
  return v;
}

}  // namespace fplate
