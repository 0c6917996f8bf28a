#pragma once

#include <array>
#include <vector>

#include "fracops.hpp"

namespace fplate {

enum class Theory { Mindlin, Kirchoff };
enum class Axis { X, Y };

// Uniform structured grid of four-noded quadrilaterals over [0,L] x [0,B].
// Nodes are numbered row-major, node(i,j) = j*(nx+1) + i; elements likewise.
// Element-local node order is counterclockwise starting at the lower-left.
struct StructuredMesh {
  double length = 0.0;  // L
  double width = 0.0;   // B
  int nx = 0;           // elements along x
  int ny = 0;           // elements along y
  double lex = 0.0;
  double ley = 0.0;

  int n_nodes() const { return (nx + 1) * (ny + 1); }
  int n_elements() const { return nx * ny; }
  int node_index(int i, int j) const { return j * (nx + 1) + i; }
  int element_index(int ei, int ej) const { return ej * nx + ei; }

  std::array<double, 2> node_coord(int node) const {
    int i = node % (nx + 1), j = node / (nx + 1);
    return {i * lex, j * ley};
  }
  std::array<int, 4> element_nodes(int elem) const {
    int ei = elem % nx, ej = elem / nx;
    return {node_index(ei, ej), node_index(ei + 1, ej),
            node_index(ei + 1, ej + 1), node_index(ei, ej + 1)};
  }
  // Closed-form point location on the uniform grid (clamped to valid range).
  int element_coord_of(double s, Axis axis) const;
  bool is_boundary_node(int node) const {
    int i = node % (nx + 1), j = node / (nx + 1);
    return i == 0 || i == nx || j == 0 || j == ny;
  }
  // 2D element Jacobian (lex/2)(ley/2); 1D line Jacobians lex/2, ley/2.
  double jacobian2d() const { return 0.25 * lex * ley; }
  double jacobian1d(Axis axis) const {
    return 0.5 * (axis == Axis::X ? lex : ley);
  }
};

// Global degree-of-freedom numbering: node-major, components contiguous.
// Mindlin components: u0, v0, w0, theta_x, theta_y.
// Kirchoff components: u0, v0, w0, dw/dx, dw/dy, d2w/dxdy.
struct DofMap {
  Theory theory = Theory::Mindlin;
  int dofs_per_node = 5;
  int n_nodes = 0;

  int n_dofs() const { return dofs_per_node * n_nodes; }
  int global(int node, int comp) const { return node * dofs_per_node + comp; }
  bool is_transverse_comp(int comp) const { return comp >= 2; }
};

std::pair<StructuredMesh, DofMap> build_mesh(double length, double width,
                                             int nx, int ny, Theory theory);

// One-dimensional convolution stencil at a Gauss point: the contiguous range
// of elements the horizon line crosses along one axis, with the truncated
// horizon lengths.  Element indices are axis indices (ei or ej).
struct HorizonStencil {
  Axis axis = Axis::X;
  double anchor = 0.0;            // coordinate along the axis
  FractionalParams params;        // truncated l_a / l_b
  int singular_element = 0;       // axis index of the element holding anchor
  int first_element = 0;          // leftmost crossed element (axis index)
  int last_element = 0;           // rightmost crossed element
  int n_left() const { return singular_element - first_element; }
  int n_right() const { return last_element - singular_element; }
};

// Builds the stencil for the truncated horizon of nominal length l_f at the
// anchor coordinate along the chosen axis; the anchor must lie strictly
// inside the domain.  The stencil covers exactly (anchor-l_a, anchor+l_b).
HorizonStencil horizon_stencil(const StructuredMesh& mesh, double x, double y,
                               Axis axis, double alpha, double l_f);

}  // namespace fplate
