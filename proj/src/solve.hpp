#pragma once

#include <Eigen/Dense>

#include <vector>

#include "assembly.hpp"
#include "linsolve.hpp"

namespace fplate {

// Full-length static displacement vector with constrained DOFs reinstated as
// zeros, plus interpolation access to the mid-plane fields.
struct StaticSolution {
  Eigen::VectorXd u;      // full DOF vector
  double residual = 0.0;  // |K_red u_red - F_red| / |F_red|

  // Interpolated component value at (x, y); for Kirchoff, w uses the Hermite
  // basis and in-plane components the Lagrange basis.
  double value_at(const StructuredMesh& mesh, const DofMap& dofs, double x,
                  double y, int comp) const;
};

struct ModalSolution {
  std::vector<double> omega;            // rad/s, ascending
  Eigen::MatrixXd modes;                // full-length columns, M-orthonormal
  std::vector<double> participation;    // transverse mass fraction per mode
  std::vector<double> residual;         // |K x - w^2 M x| / (|K x|)
};

struct SolveOptions {
  SolverPolicy policy;
  // Source of the classical (alpha = 1) stiffness on the same mesh and DOF
  // map, used to precondition the PCG fallback for oversized bands.
  std::function<const CsrMatrix*()> local_stiffness;
};

StaticSolution static_solve(const AssembledSystem& sys,
                            const ReducedSystem& red,
                            const SolveOptions& opts = {});

ModalSolution modal_solve(const AssembledSystem& sys, const ReducedSystem& red,
                          int n_modes, const SolveOptions& opts = {});

// Keeps modes whose transverse mass participation exceeds the threshold.
ModalSolution classify_transverse(const ModalSolution& all,
                                  double threshold = 0.99);

enum class BcFamily { CCCC, SSSS };

struct NondimContext {
  BcFamily bc = BcFamily::CCCC;
  double e = 0.0;    // elastic modulus E (E1)
  double h = 0.0;
  double length = 0.0;  // L
  double width = 0.0;   // B
  double rho = 0.0;
  double d11 = 0.0;
  double q = 0.0;    // transverse load magnitude
};

// wbar = w(L/2,B/2) * 100 E h^3 / (q L^4)
double nondim_deflection(double w_center, const NondimContext& ctx);
// CCCC: wbar0 = omega L^2/h sqrt(rho/E);  SSSS: omega (B/pi)^2 sqrt(rho h / D11)
double nondim_frequency(double omega, const NondimContext& ctx);

}  // namespace fplate
