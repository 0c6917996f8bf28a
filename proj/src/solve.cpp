#include "solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shape.hpp"

namespace fplate {

namespace {

// Verifies that the stiffness carries no coupling between the in-plane and
// transverse component groups, which the theory guarantees structurally.
bool blocks_uncoupled(const AssembledSystem& sys) {
  const int dpn = sys.dofs.dofs_per_node;
  for (int i = 0; i < sys.stiffness.n_rows; ++i) {
    bool row_inplane = (i % dpn) < 2;
    for (int64_t p = sys.stiffness.row_ptr[i]; p < sys.stiffness.row_ptr[i + 1];
         ++p) {
      if (sys.stiffness.val[p] == 0.0) continue;
      bool col_inplane = (sys.stiffness.col[p] % dpn) < 2;
      if (row_inplane != col_inplane) return false;
    }
  }
  return true;
}

std::vector<BlockMap> solve_blocks(const AssembledSystem& sys,
                                   const ReducedSystem& red) {
  std::vector<BlockMap> blocks;
  if (blocks_uncoupled(sys)) {
    blocks.push_back(make_block_map(sys.dofs, red, inplane_comps(sys.dofs.theory)));
    blocks.push_back(
        make_block_map(sys.dofs, red, transverse_comps(sys.dofs.theory)));
  } else {
    std::vector<int> all(sys.dofs.dofs_per_node);
    std::iota(all.begin(), all.end(), 0);
    blocks.push_back(make_block_map(sys.dofs, red, all));
  }
  // drop empty blocks
  std::vector<BlockMap> out;
  for (auto& b : blocks)
    if (b.dim > 0) out.push_back(std::move(b));
  return out;
}

}  // namespace

StaticSolution static_solve(const AssembledSystem& sys,
                            const ReducedSystem& red,
                            const SolveOptions& opts) {
  StaticSolution sol;
  sol.u = Eigen::VectorXd::Zero(sys.dofs.n_dofs());

  double f_norm2 = 0.0, res_norm2 = 0.0;
  for (const BlockMap& bm : solve_blocks(sys, red)) {
    Eigen::VectorXd fb(bm.dim);
    for (int i = 0; i < bm.dim; ++i) fb[i] = sys.force[bm.blk_to_full[i]];
    f_norm2 += fb.squaredNorm();
    if (fb.norm() == 0.0) continue;  // unloaded block: zero solution
    CsrMatrix kb = extract_submatrix(sys.stiffness, bm.full_to_blk, bm.dim);
    SolverPolicy pol = opts.policy;
    if (opts.local_stiffness)
      pol.precond_provider = [&]() {
        return extract_submatrix(*opts.local_stiffness(), bm.full_to_blk,
                                 bm.dim);
      };
    auto solver = make_spd_solver(kb, pol);
    Eigen::VectorXd xb = solver->solve(fb);
    res_norm2 += (kb.multiply(xb) - fb).squaredNorm();
    for (int i = 0; i < bm.dim; ++i) sol.u[bm.blk_to_full[i]] = xb[i];
  }
  sol.residual =
      f_norm2 > 0.0 ? std::sqrt(res_norm2) / std::sqrt(f_norm2) : 0.0;
  return sol;
}

ModalSolution modal_solve(const AssembledSystem& sys, const ReducedSystem& red,
                          int n_modes, const SolveOptions& opts) {
  if (n_modes < 1 || n_modes > red.n_red)
    throw std::invalid_argument("modal_solve: mode count exceeds reduced size");

  struct Cand {
    double lambda;
    Eigen::VectorXd full;  // full-length vector
    double participation;
    double residual;
  };
  std::vector<Cand> cands;

  for (const BlockMap& bm : solve_blocks(sys, red)) {
    int want = std::min(n_modes, bm.dim);
    CsrMatrix kb = extract_submatrix(sys.stiffness, bm.full_to_blk, bm.dim);
    CsrMatrix mb = extract_submatrix(sys.mass, bm.full_to_blk, bm.dim);
    SolverPolicy pol = opts.policy;
    if (opts.local_stiffness)
      pol.precond_provider = [&]() {
        return extract_submatrix(*opts.local_stiffness(), bm.full_to_blk,
                                 bm.dim);
      };
    EigResult eig = lowest_eigenpairs(kb, mb, want, pol);
    for (int i = 0; i < want; ++i) {
      Cand c;
      c.lambda = eig.values[i];
      c.full = Eigen::VectorXd::Zero(sys.dofs.n_dofs());
      for (int r = 0; r < bm.dim; ++r)
        c.full[bm.blk_to_full[r]] = eig.vectors(r, i);
      Eigen::VectorXd kx = kb.multiply(eig.vectors.col(i));
      Eigen::VectorXd mx = mb.multiply(eig.vectors.col(i));
      c.residual = (kx - c.lambda * mx).norm() / kx.norm();
      // transverse mass participation of this block-supported mode
      double num = 0.0, den = 0.0;
      const int dpn = sys.dofs.dofs_per_node;
      for (int r = 0; r < bm.dim; ++r) {
        double xi = eig.vectors(r, i), mxi = mx[r];
        den += xi * mxi;
        if (bm.blk_to_full[r] % dpn >= 2) num += xi * mxi;
      }
      c.participation = den > 0.0 ? num / den : 0.0;
      cands.push_back(std::move(c));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.lambda < b.lambda; });
  if (static_cast<int>(cands.size()) > n_modes) cands.resize(n_modes);

  ModalSolution out;
  out.modes.resize(sys.dofs.n_dofs(), static_cast<int>(cands.size()));
  for (size_t i = 0; i < cands.size(); ++i) {
    out.omega.push_back(std::sqrt(std::max(0.0, cands[i].lambda)));
    out.modes.col(static_cast<int>(i)) = cands[i].full;
    out.participation.push_back(cands[i].participation);
    out.residual.push_back(cands[i].residual);
  }
  return out;
}

ModalSolution classify_transverse(const ModalSolution& all, double threshold) {
  ModalSolution out;
  std::vector<int> keep;
  for (size_t i = 0; i < all.omega.size(); ++i)
    if (all.participation[i] > threshold) keep.push_back(static_cast<int>(i));
  out.modes.resize(all.modes.rows(), static_cast<int>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) {
    out.omega.push_back(all.omega[keep[k]]);
    out.participation.push_back(all.participation[keep[k]]);
    out.residual.push_back(all.residual[keep[k]]);
    out.modes.col(static_cast<int>(k)) = all.modes.col(keep[k]);
  }
  return out;
}

double StaticSolution::value_at(const StructuredMesh& mesh, const DofMap& dofs,
                                double x, double y, int comp) const {
  int ei = mesh.element_coord_of(std::min(x, mesh.length * (1.0 - 1e-12)),
                                 Axis::X);
  int ej = mesh.element_coord_of(std::min(y, mesh.width * (1.0 - 1e-12)),
                                 Axis::Y);
  int elem = mesh.element_index(ei, ej);
  auto nodes = mesh.element_nodes(elem);
  double xc = (ei + 0.5) * mesh.lex, yc = (ej + 0.5) * mesh.ley;
  double xi = 2.0 * (x - xc) / mesh.lex, eta = 2.0 * (y - yc) / mesh.ley;
  if (dofs.theory == Theory::Kirchoff && comp >= 2) {
    auto h = hermite_shape(xi, eta, 0, 0, mesh.lex, mesh.ley);
    if (comp != 2)
      throw std::invalid_argument("value_at: Kirchoff derivative components "
                                  "are nodal DOFs, interpolate w only");
    double v = 0.0;
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < 4; ++c)
        v += h[4 * k + c] * u[dofs.global(nodes[k], 2 + c)];
    return v;
  }
  LagrangeShape l = lagrange_shape(xi, eta);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) v += l.n[k] * u[dofs.global(nodes[k], comp)];
  return v;
}

double nondim_deflection(double w_center, const NondimContext& ctx) {
  if (!(ctx.e > 0.0) || !(ctx.h > 0.0) || !(ctx.length > 0.0) || !(ctx.q != 0.0))
    throw std::invalid_argument("nondim_deflection: missing context fields");
  return w_center * 100.0 * ctx.e * ctx.h * ctx.h * ctx.h /
         (ctx.q * std::pow(ctx.length, 4));
}

double nondim_frequency(double omega, const NondimContext& ctx) {
  if (ctx.bc == BcFamily::CCCC) {
    if (!(ctx.e > 0.0) || !(ctx.h > 0.0) || !(ctx.length > 0.0) ||
        !(ctx.rho > 0.0))
      throw std::invalid_argument("nondim_frequency: missing context fields");
    return omega * ctx.length * ctx.length / ctx.h * std::sqrt(ctx.rho / ctx.e);
  }
  if (!(ctx.d11 > 0.0) || !(ctx.width > 0.0) || !(ctx.rho > 0.0) ||
      !(ctx.h > 0.0))
    throw std::invalid_argument("nondim_frequency: missing context fields");
  double s = ctx.width / M_PI;
  return omega * s * s * std::sqrt(ctx.rho * ctx.h / ctx.d11);
}

}  // namespace fplate
