#pragma once

#include <array>

#include "model.hpp"

namespace fplate {

// Manufactured-solution forcing for the clamped Mindlin validation case on
// the unit plate: the assumed mid-plane field is
//   u0 = v0 = 0,   w0 = theta_x = theta_y = x y (x-1)(y-1),
// and the loads (F_z, M_theta_x, M_theta_y) are the strong-form residuals of
// the fractional-order plate equations applied to that field, with horizons
// truncated at the boundaries.  The inner Riesz-Caputo derivatives of the
// polynomial reduce to closed form; the outer Riesz Riemann-Liouville
// derivatives are evaluated by singularity-aware adaptive quadrature.
struct MmsForcing {
  ConstitutiveMatrices cm;
  double alpha = 1.0;
  double l_f = 0.0;
  double rel_tol = 1e-8;

  std::array<double, 3> operator()(double x, double y) const;

  static double exact_w(double x, double y) {
    return x * y * (x - 1.0) * (y - 1.0);
  }
};

}  // namespace fplate
