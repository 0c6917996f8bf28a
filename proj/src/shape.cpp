#include "shape.hpp"

#include <cmath>
#include <stdexcept>

namespace fplate {

LagrangeShape lagrange_shape(double xi, double eta) {
  static const double sx[4] = {-1.0, 1.0, 1.0, -1.0};
  static const double sy[4] = {-1.0, -1.0, 1.0, 1.0};
  LagrangeShape s;
  for (int k = 0; k < 4; ++k) {
    s.n[k] = 0.25 * (1.0 + sx[k] * xi) * (1.0 + sy[k] * eta);
    s.dn_dxi[k] = 0.25 * sx[k] * (1.0 + sy[k] * eta);
    s.dn_deta[k] = 0.25 * sy[k] * (1.0 + sx[k] * xi);
  }
  return s;
}

namespace {

// 1D cubic Hermite pair on [-1,1] attached to the node at s = sgn, with the
// slope function normalized to unit d/ds at its node.  deriv = 0,1,2.
inline double herm_value(double s, double sgn, int deriv) {
  // value-type function: 1 at its node, 0 and zero slope at the other end
  switch (deriv) {
    case 0: return 0.25 * (2.0 + 3.0 * sgn * s - sgn * s * s * s);
    case 1: return 0.25 * (3.0 * sgn - 3.0 * sgn * s * s);
    case 2: return -1.5 * sgn * s;
  }
  throw std::invalid_argument("herm_value: derivative order must be 0..2");
}

inline double herm_slope(double s, double sgn, int deriv) {
  // slope-type function: zero value at both ends, unit d/ds at its node
  switch (deriv) {
    case 0: return 0.25 * (sgn * s * s * s + s * s - sgn * s - 1.0) * sgn;
    case 1: return 0.25 * (3.0 * sgn * s * s + 2.0 * s - sgn) * sgn;
    case 2: return 0.25 * (6.0 * sgn * s + 2.0) * sgn;
  }
  throw std::invalid_argument("herm_slope: derivative order must be 0..2");
}

}  // namespace

std::array<double, 16> hermite_shape(double xi, double eta, int dx, int dy,
                                     double lex, double ley) {
  if (dx < 0 || dx > 2 || dy < 0 || dy > 2)
    throw std::invalid_argument("hermite_shape: derivative orders must be 0..2");
  static const double sx[4] = {-1.0, 1.0, 1.0, -1.0};
  static const double sy[4] = {-1.0, -1.0, 1.0, 1.0};
  // d/dx = (2/lex) d/dxi
  const double fx = std::pow(2.0 / lex, dx);
  const double fy = std::pow(2.0 / ley, dy);
  std::array<double, 16> h;
  for (int k = 0; k < 4; ++k) {
    const double v_x = herm_value(xi, sx[k], dx) * fx;
    const double s_x = herm_slope(xi, sx[k], dx) * fx * (lex / 2.0);
    const double v_y = herm_value(eta, sy[k], dy) * fy;
    const double s_y = herm_slope(eta, sy[k], dy) * fy * (ley / 2.0);
    h[4 * k + 0] = v_x * v_y;  // w
    h[4 * k + 1] = s_x * v_y;  // w_x
    h[4 * k + 2] = v_x * s_y;  // w_y
    h[4 * k + 3] = s_x * s_y;  // w_xy
  }
  return h;
}

}  // namespace fplate
