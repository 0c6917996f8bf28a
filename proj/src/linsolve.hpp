#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>

#include "sparse.hpp"

namespace fplate {

// SPD solver interface over one matrix block.
class SpdSolver {
 public:
  virtual ~SpdSolver() = default;
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const = 0;
  virtual const char* kind() const = 0;
};

// LAPACK banded Cholesky (dpbtrf/dpbtrs), lower storage.
std::unique_ptr<SpdSolver> make_band_solver(const CsrMatrix& a);

// Dense Cholesky via Eigen LLT.
std::unique_ptr<SpdSolver> make_dense_solver(const CsrMatrix& a);

// Conjugate gradients on `a`, preconditioned by a banded factorization of
// `precond` (same dimension, SPD).  Intended for very large static solves
// where the band of `a` does not fit the memory budget.
std::unique_ptr<SpdSolver> make_pcg_solver(const CsrMatrix& a,
                                           const CsrMatrix& precond,
                                           double rel_tol = 1e-12,
                                           int max_iter = 5000);

struct SolverPolicy {
  int dense_threshold = 3000;
  double band_mem_limit_bytes = 1.5e9;
  // Optional provider of a preconditioner matrix for the PCG fallback.
  std::function<CsrMatrix()> precond_provider;
};

// Picks dense / banded / PCG per the policy.  Throws when PCG is required
// but no preconditioner provider is configured.
std::unique_ptr<SpdSolver> make_spd_solver(const CsrMatrix& a,
                                           const SolverPolicy& policy);

// Lowest eigenpairs of K x = lambda M x (both SPD) via shift-invert Lanczos
// with full reorthogonalization in the M-inner product.  Returns
// M-orthonormal vectors; eigenvalues ascending.
struct EigResult {
  Eigen::VectorXd values;   // lambda = omega^2
  Eigen::MatrixXd vectors;  // columns, M-orthonormal
};

EigResult lowest_eigenpairs(const CsrMatrix& k, const CsrMatrix& m,
                            int n_modes, const SolverPolicy& policy,
                            double tol = 1e-10);

}  // namespace fplate
