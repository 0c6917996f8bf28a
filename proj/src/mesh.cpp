#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fplate {

int StructuredMesh::element_coord_of(double s, Axis axis) const {
  double le = (axis == Axis::X) ? lex : ley;
  int n = (axis == Axis::X) ? nx : ny;
  int e = static_cast<int>(std::floor(s / le));
  return std::clamp(e, 0, n - 1);
}

std::pair<StructuredMesh, DofMap> build_mesh(double length, double width,
                                             int nx, int ny, Theory theory) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_mesh: element counts must be >= 1");
  if (!(length > 0.0) || !(width > 0.0))
    throw std::invalid_argument("build_mesh: dimensions must be positive");
  StructuredMesh mesh;
  mesh.length = length;
  mesh.width = width;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.lex = length / nx;
  mesh.ley = width / ny;
  DofMap dofs;
  dofs.theory = theory;
  dofs.dofs_per_node = (theory == Theory::Mindlin) ? 5 : 6;
  dofs.n_nodes = mesh.n_nodes();
  return {mesh, dofs};
}

HorizonStencil horizon_stencil(const StructuredMesh& mesh, double x, double y,
                               Axis axis, double alpha, double l_f) {
  if (x <= 0.0 || x >= mesh.length || y <= 0.0 || y >= mesh.width)
    throw std::domain_error("horizon_stencil: anchor outside the domain");
  double s = (axis == Axis::X) ? x : y;
  double extent = (axis == Axis::X) ? mesh.length : mesh.width;

  HorizonStencil st;
  st.axis = axis;
  st.anchor = s;
  st.params.alpha = alpha;
  st.params.l_a = std::min(l_f, s);
  st.params.l_b = std::min(l_f, extent - s);
  st.singular_element = mesh.element_coord_of(s, axis);

  double le = (axis == Axis::X) ? mesh.lex : mesh.ley;
  // Crossed-element range derived from coordinates so the covered union is
  // exactly (s - l_a, s + l_b) regardless of floating-point fuzz in l_f/le.
  double eps = 1e-9 * le;
  st.first_element = mesh.element_coord_of(s - st.params.l_a + eps, axis);
  st.last_element = mesh.element_coord_of(s + st.params.l_b - eps, axis);
  return st;
}

}  // namespace fplate
