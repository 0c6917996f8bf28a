#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "mesh.hpp"
#include "model.hpp"
#include "sparse.hpp"

namespace fplate {

// Field variables carried by the plate theories.  HermW addresses the whole
// Hermite w-block (components w, w_x, w_y, w_xy) of the Kirchoff map.
enum class Var { U0, V0, W0, ThetaX, ThetaY, HermW };

struct AssemblyOptions {
  double alpha = 1.0;
  double l_f = 0.0;        // nominal horizon length (absolute)
  int inner_gl_points = 4; // per nonsingular stencil element, per direction
  int outer_points = 0;    // 0 = theory default (2 Mindlin, 3 Kirchoff)
  int mass_points = 0;     // 0 = default (2 Mindlin, 4 Kirchoff)
  int force_points = 0;    // 0 = default (mass rule; 3 for pointwise loads)
};

// Sparse row over global DOFs evaluating one derivative at one point.
struct RowOperator {
  std::vector<int32_t> dofs;
  std::vector<double> coeffs;
  double dot(const Eigen::VectorXd& u) const {
    double s = 0.0;
    for (size_t k = 0; k < dofs.size(); ++k) s += coeffs[k] * u[dofs[k]];
    return s;
  }
};

// Integer-order derivative row (d^(dx+dy)/dx^dx dy^dy of the interpolation of
// var) at a physical point inside element elem, scattered to global DOFs.
// Lagrange variables support dx+dy == 1; HermW supports dx+dy <= 2.
RowOperator integer_b_row(const StructuredMesh& mesh, const DofMap& dofs,
                          int elem, double x, double y, Var var, int dx,
                          int dy);

// Nonlocal derivative row D^alpha along conv_axis of the inner integer
// derivative of var at the anchor Gauss point.  For Lagrange variables the
// inner derivative is along conv_axis itself; for HermW the inner derivative
// is d^2/d(conv_axis)d(inner_axis).  At alpha = 1 the row reduces to the
// local integer row of the anchor element.
RowOperator nonlocal_b_row(const StructuredMesh& mesh, const DofMap& dofs,
                           double ax, double ay, Var var, Axis conv_axis,
                           Axis inner_axis, const AssemblyOptions& opts);

struct LoadSpec {
  enum class Kind { Uniform, Pointwise };
  Kind kind = Kind::Uniform;
  double q = 1.0;  // uniform transverse pressure
  // Pointwise fields (F_z, M_theta_x, M_theta_y) sampled at quadrature points.
  std::function<std::array<double, 3>(double, double)> fields;
};

CsrMatrix assemble_stiffness(const StructuredMesh& mesh, const DofMap& dofs,
                             const ConstitutiveMatrices& cm,
                             const AssemblyOptions& opts);
CsrMatrix assemble_mass(const StructuredMesh& mesh, const DofMap& dofs,
                        const InertiaCoeffs& in, const AssemblyOptions& opts);
Eigen::VectorXd assemble_force(const StructuredMesh& mesh, const DofMap& dofs,
                               const LoadSpec& load,
                               const AssemblyOptions& opts);

struct AssembledSystem {
  StructuredMesh mesh;
  DofMap dofs;
  CsrMatrix stiffness;
  CsrMatrix mass;
  Eigen::VectorXd force;
  AssemblyOptions opts;
};

AssembledSystem assemble_system(const StructuredMesh& mesh, const DofMap& dofs,
                                const ConstitutiveMatrices& cm,
                                const InertiaCoeffs& in, const LoadSpec& load,
                                const AssemblyOptions& opts);

// Essential boundary conditions as explicit (node, component) constraints.
struct BoundaryConditionSet {
  std::string name;
  std::vector<std::pair<int32_t, int32_t>> node_comp;
};

BoundaryConditionSet bc_clamped_all(const StructuredMesh& mesh,
                                    const DofMap& dofs);
BoundaryConditionSet bc_simply_supported_all(const StructuredMesh& mesh,
                                             const DofMap& dofs);

// Reduction map produced by eliminating constrained DOFs.
struct ReducedSystem {
  std::vector<int32_t> full_to_red;  // -1 for constrained DOFs
  std::vector<int32_t> retained;     // reduced index -> full DOF
  int n_red = 0;
};

ReducedSystem apply_essential_bcs(const AssembledSystem& sys,
                                  const BoundaryConditionSet& bcs);

// Index map restricted to one uncoupled component group of the reduced
// system (in-plane {u0,v0} or the transverse block).
struct BlockMap {
  std::vector<int32_t> full_to_blk;  // -1 outside block or constrained
  std::vector<int32_t> blk_to_full;
  int dim = 0;
};

BlockMap make_block_map(const DofMap& dofs, const ReducedSystem& red,
                        const std::vector<int>& comps);

std::vector<int> inplane_comps(Theory theory);
std::vector<int> transverse_comps(Theory theory);

}  // namespace fplate
