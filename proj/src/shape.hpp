#pragma once

#include <array>

namespace fplate {

// Bilinear Q4 Lagrange basis on the reference square [-1,1]^2.
// Local node order is counterclockwise: (-1,-1), (1,-1), (1,1), (-1,1).
struct LagrangeShape {
  std::array<double, 4> n;       // values
  std::array<double, 4> dn_dxi;  // reference-coordinate gradients
  std::array<double, 4> dn_deta;
};
LagrangeShape lagrange_shape(double xi, double eta);

// Conforming bicubic Hermite basis for Q4 elements: 16 functions, four per
// node in DOF order {w, w_x, w_y, w_xy}.  Derivative DOFs are stored in
// physical units, so the slope functions carry the element half-length
// scaling (lex/2, ley/2).  Returns the basis differentiated dx times in x and
// dy times in y, in physical coordinates (dx, dy <= 2).
std::array<double, 16> hermite_shape(double xi, double eta, int dx, int dy,
                                     double lex, double ley);

}  // namespace fplate
