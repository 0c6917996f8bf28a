#include "study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fplate {

namespace {

std::string theory_name(Theory t) {
  return t == Theory::Mindlin ? "Mindlin" : "Kirchoff";
}

std::string fmt(double v, const char* f = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// Runs fn(0..n-1); with threads > 1 the cells execute concurrently but all
// outputs land in index-addressed slots, so results match the serial order.
void run_cells(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mtx;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mtx);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

StudyRunner::StudyRunner(const StudyConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  mat_ = isotropic(cfg_.e, cfg_.nu, cfg_.rho, cfg_.ks);
  cm_ = constitutive(mat_, cfg_.h);
  in_ = inertia(mat_, cfg_.h);
}

std::pair<int, int> StudyRunner::mesh_for(double lf_frac) const {
  double lf_abs = lf_frac * cfg_.length;
  int nx = static_cast<int>(std::ceil(cfg_.rate_x * cfg_.length / lf_abs - 1e-9));
  int ny = static_cast<int>(std::ceil(cfg_.rate_y * cfg_.width / lf_abs - 1e-9));
  return {nx, ny};
}

LoadSpec StudyRunner::udtl_load() const {
  LoadSpec l;
  l.kind = LoadSpec::Kind::Uniform;
  l.q = cfg_.q;
  return l;
}

LoadSpec StudyRunner::mms_load(double alpha, double lf_frac) const {
  if (cfg_.theory != Theory::Mindlin)
    throw std::invalid_argument("mms load is defined for the Mindlin theory");
  if (std::abs(cfg_.length - 1.0) > 1e-12 || std::abs(cfg_.width - 1.0) > 1e-12)
    throw std::invalid_argument("mms load assumes the unit plate L = B = 1");
  MmsForcing f;
  f.cm = cm_;
  f.alpha = alpha;
  f.l_f = lf_frac * cfg_.length;
  f.rel_tol = cfg_.tolerance;
  LoadSpec l;
  l.kind = LoadSpec::Kind::Pointwise;
  l.fields = [f](double x, double y) { return f(x, y); };
  return l;
}

AssembledSystem StudyRunner::assemble(double alpha, double lf_frac, int nx,
                                      int ny, const LoadSpec& load) const {
  auto [mesh, dofs] = build_mesh(cfg_.length, cfg_.width, nx, ny, cfg_.theory);
  AssemblyOptions opts;
  opts.alpha = alpha;
  opts.l_f = lf_frac * cfg_.length;
  return assemble_system(mesh, dofs, cm_, in_, load, opts);
}

BoundaryConditionSet StudyRunner::boundary_conditions(
    const AssembledSystem& sys) const {
  return cfg_.bc == "CCCC" ? bc_clamped_all(sys.mesh, sys.dofs)
                           : bc_simply_supported_all(sys.mesh, sys.dofs);
}

SolveOptions StudyRunner::solve_options(const AssembledSystem& sys) const {
  SolveOptions o;
  auto cache = std::make_shared<CsrMatrix>();
  auto mesh = sys.mesh;
  auto dofs = sys.dofs;
  auto cm = cm_;
  o.local_stiffness = [cache, mesh, dofs, cm]() -> const CsrMatrix* {
    if (cache->n_rows == 0) {
      AssemblyOptions local;
      local.alpha = 1.0;
      *cache = assemble_stiffness(mesh, dofs, cm, local);
    }
    return cache.get();
  };
  return o;
}

NondimContext StudyRunner::context() const {
  NondimContext ctx;
  ctx.bc = cfg_.bc == "CCCC" ? BcFamily::CCCC : BcFamily::SSSS;
  ctx.e = cfg_.e;
  ctx.h = cfg_.h;
  ctx.length = cfg_.length;
  ctx.width = cfg_.width;
  ctx.rho = cfg_.rho;
  ctx.d11 = cm_.d11;
  ctx.q = cfg_.q;
  return ctx;
}

namespace {

std::string meta_line(const StudyConfig& c, const std::string& kind) {
  std::ostringstream os;
  os << "fplate study=" << kind << " theory=" << theory_name(c.theory)
     << " bc=" << c.bc << " L=" << fmt(c.length) << " B=" << fmt(c.width)
     << " h=" << fmt(c.h) << " E=" << fmt(c.e) << " nu=" << fmt(c.nu)
     << " rho=" << fmt(c.rho) << " ks=" << fmt(c.ks) << " load=" << c.load
     << " q=" << fmt(c.q) << " rate=" << c.rate_x << "x" << c.rate_y
     << " modes=" << c.modes << " tolerance=" << fmt(c.tolerance);
  return os.str();
}

double center_wbar(const StudyRunner& run, const AssembledSystem& sys,
                   const StaticSolution& sol) {
  double wc = sol.value_at(sys.mesh, sys.dofs, 0.5 * sys.mesh.length,
                           0.5 * sys.mesh.width, 2);
  return nondim_deflection(wc, run.context());
}

// One static cell: assemble, reduce, solve, return wbar.
double static_cell(const StudyRunner& run, double alpha, double lf_frac,
                   const LoadSpec& load) {
  auto [nx, ny] = run.mesh_for(lf_frac);
  AssembledSystem sys = run.assemble(alpha, lf_frac, nx, ny, load);
  ReducedSystem red = apply_essential_bcs(sys, run.boundary_conditions(sys));
  StaticSolution sol = static_solve(sys, red, run.solve_options(sys));
  return center_wbar(run, sys, sol);
}

std::vector<double> modal_cell(const StudyRunner& run, double alpha,
                               double lf_frac, int n_modes) {
  auto [nx, ny] = run.mesh_for(lf_frac);
  AssembledSystem sys =
      run.assemble(alpha, lf_frac, nx, ny, run.udtl_load());
  ReducedSystem red = apply_essential_bcs(sys, run.boundary_conditions(sys));
  SolveOptions so = run.solve_options(sys);
  int request = std::min(red.n_red, n_modes + 8);
  for (;;) {
    ModalSolution all = modal_solve(sys, red, request, so);
    ModalSolution tr = classify_transverse(all);
    if (static_cast<int>(tr.omega.size()) >= n_modes || request >= red.n_red) {
      std::vector<double> out;
      NondimContext ctx = run.context();
      for (int k = 0; k < n_modes && k < static_cast<int>(tr.omega.size()); ++k)
        out.push_back(nondim_frequency(tr.omega[k], ctx));
      return out;
    }
    request = std::min(red.n_red, request + 8);
  }
}

}  // namespace

StudyResult run_validation(const StudyConfig& cfg) {
  StudyConfig c = cfg;
  if (c.theory != Theory::Mindlin)
    throw std::invalid_argument("validate: theory must be Mindlin");
  if (c.bc != "CCCC")
    throw std::invalid_argument("validate: the manufactured case is clamped");
  StudyRunner run(c);
  double min_lf = *std::min_element(c.lf_fracs.begin(), c.lf_fracs.end());

  struct Cell {
    double alpha, lf;
  };
  std::vector<Cell> cells;
  for (double a : c.alphas) {
    if (a == 1.0)
      cells.push_back({1.0, min_lf});
    else
      for (double lf : c.lf_fracs) cells.push_back({a, lf});
  }
  std::vector<double> values(cells.size());
  run_cells(static_cast<int>(cells.size()), c.threads, [&](int i) {
    const Cell& cell = cells[i];
    auto [nx, ny] = run.mesh_for(cell.lf);
    AssembledSystem sys = run.assemble(cell.alpha, cell.lf, nx, ny,
                                       run.mms_load(cell.alpha, cell.lf));
    ReducedSystem red = apply_essential_bcs(sys, run.boundary_conditions(sys));
    StaticSolution sol = static_solve(sys, red, run.solve_options(sys));
    values[i] = 100.0 * sol.value_at(sys.mesh, sys.dofs, 0.5, 0.5, 2);
  });

  StudyResult res;
  res.meta = meta_line(c, "validate");
  const double exact = 100.0 * MmsForcing::exact_w(0.5, 0.5);
  for (size_t i = 0; i < cells.size(); ++i) {
    ReportRow r;
    r.theory = theory_name(c.theory);
    r.bc = c.bc;
    r.alpha = cells[i].alpha;
    r.lf_frac = cells[i].alpha == 1.0 ? 0.0 : cells[i].lf;
    r.rate_x = c.rate_x;
    r.rate_y = c.rate_y;
    r.quantity = "100w_center";
    r.value = values[i];
    r.reference = exact;
    res.rows.push_back(r);
  }
  return res;
}

StudyResult run_convergence(const StudyConfig& cfg) {
  StudyConfig c = cfg;
  if (c.load != "udtl")
    throw std::invalid_argument("converge: requires the UDTL load");
  if (c.bc != "CCCC")
    throw std::invalid_argument("converge: tabulated for clamped plates");
  StudyRunner run(c);
  std::vector<int> rates = c.theory == Theory::Mindlin
                               ? std::vector<int>{4, 8, 10, 12, 16}
                               : std::vector<int>{4, 8, 10, 12};

  struct Cell {
    double lf, alpha;
    int rate;
  };
  std::vector<Cell> cells;
  for (double lf : c.lf_fracs)
    for (int rate : rates)
      for (double a : c.alphas) cells.push_back({lf, a, rate});
  std::vector<double> values(cells.size());
  run_cells(static_cast<int>(cells.size()), c.threads, [&](int i) {
    StudyConfig cc = c;
    cc.rate_x = cc.rate_y = cells[i].rate;
    StudyRunner rrun(cc);
    values[i] = static_cell(rrun, cells[i].alpha, cells[i].lf,
                            rrun.udtl_load());
  });

  StudyResult res;
  res.meta = meta_line(c, "converge");
  for (size_t i = 0; i < cells.size(); ++i) {
    ReportRow r;
    r.theory = theory_name(c.theory);
    r.bc = c.bc;
    r.alpha = cells[i].alpha;
    r.lf_frac = cells[i].lf;
    r.rate_x = r.rate_y = cells[i].rate;
    r.quantity = "wbar";
    r.value = values[i];
    r.reference = ref_convergence(c.theory, cells[i].lf, cells[i].rate,
                                  cells[i].alpha);
    res.rows.push_back(r);
  }
  // successive-refinement change at the final rate, per (lf, alpha)
  for (double lf : c.lf_fracs)
    for (double a : c.alphas) {
      double prev = 0.0, last = 0.0;
      for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].lf == lf && cells[i].alpha == a) {
          if (cells[i].rate == rates[rates.size() - 2]) prev = values[i];
          if (cells[i].rate == rates.back()) last = values[i];
        }
      ReportRow r;
      r.theory = theory_name(c.theory);
      r.bc = c.bc;
      r.alpha = a;
      r.lf_frac = lf;
      r.rate_x = r.rate_y = rates.back();
      r.quantity = "succ_change_pct";
      r.value = 100.0 * std::abs(last - prev) / std::abs(prev);
      res.rows.push_back(r);
    }
  return res;
}

StudyResult run_static(const StudyConfig& cfg) {
  StudyConfig c = cfg;
  if (c.load != "udtl")
    throw std::invalid_argument("static: requires the UDTL load");
  StudyRunner run(c);
  double min_lf = *std::min_element(c.lf_fracs.begin(), c.lf_fracs.end());

  bool has_a1 = std::any_of(c.alphas.begin(), c.alphas.end(),
                            [](double a) { return a == 1.0; });
  struct Cell {
    double alpha, lf;
  };
  std::vector<Cell> cells;
  if (has_a1) cells.push_back({1.0, min_lf});
  for (double lf : c.lf_fracs)
    for (double a : c.alphas)
      if (a != 1.0) cells.push_back({a, lf});
  std::vector<double> values(cells.size());
  run_cells(static_cast<int>(cells.size()), c.threads, [&](int i) {
    values[i] = static_cell(run, cells[i].alpha, cells[i].lf, run.udtl_load());
  });

  double a1_value = has_a1 ? values[0] : 0.0;
  StudyResult res;
  res.meta = meta_line(c, "static");
  for (double lf : c.lf_fracs)
    for (double a : c.alphas) {
      double v = 0.0;
      if (a == 1.0) {
        v = a1_value;
      } else {
        for (size_t i = 0; i < cells.size(); ++i)
          if (cells[i].alpha == a && cells[i].lf == lf) v = values[i];
      }
      ReportRow r;
      r.theory = theory_name(c.theory);
      r.bc = c.bc;
      r.alpha = a;
      r.lf_frac = lf;
      r.rate_x = c.rate_x;
      r.rate_y = c.rate_y;
      r.quantity = "wbar";
      r.value = v;
      r.reference = ref_static(c.theory, c.bc, lf, a);
      res.rows.push_back(r);
    }
  return res;
}

StudyResult run_modal(const StudyConfig& cfg) {
  StudyConfig c = cfg;
  StudyRunner run(c);
  double min_lf = *std::min_element(c.lf_fracs.begin(), c.lf_fracs.end());

  bool has_a1 = std::any_of(c.alphas.begin(), c.alphas.end(),
                            [](double a) { return a == 1.0; });
  struct Cell {
    double alpha, lf;
  };
  std::vector<Cell> cells;
  if (has_a1) cells.push_back({1.0, min_lf});
  for (double lf : c.lf_fracs)
    for (double a : c.alphas)
      if (a != 1.0) cells.push_back({a, lf});
  std::vector<std::vector<double>> values(cells.size());
  run_cells(static_cast<int>(cells.size()), c.threads, [&](int i) {
    values[i] = modal_cell(run, cells[i].alpha, cells[i].lf, c.modes);
  });

  StudyResult res;
  res.meta = meta_line(c, "modal");
  for (double lf : c.lf_fracs)
    for (double a : c.alphas) {
      const std::vector<double>* v = nullptr;
      if (a == 1.0) {
        v = &values[0];
      } else {
        for (size_t i = 0; i < cells.size(); ++i)
          if (cells[i].alpha == a && cells[i].lf == lf) v = &values[i];
      }
      for (int k = 0; k < static_cast<int>(v->size()); ++k) {
        ReportRow r;
        r.theory = theory_name(c.theory);
        r.bc = c.bc;
        r.alpha = a;
        r.lf_frac = lf;
        r.rate_x = c.rate_x;
        r.rate_y = c.rate_y;
        r.quantity = "omegabar" + std::to_string(k);
        r.value = (*v)[k];
        r.reference = ref_modal(c.theory, c.bc, lf, a, k);
        res.rows.push_back(r);
      }
    }
  return res;
}

StudyResult run_study(const StudyConfig& cfg, const std::string& kind) {
  if (kind == "validate") return run_validation(cfg);
  if (kind == "converge") return run_convergence(cfg);
  if (kind == "static") return run_static(cfg);
  if (kind == "modal") return run_modal(cfg);
  throw std::invalid_argument("unknown study kind '" + kind + "'");
}

std::string to_csv(const StudyResult& r) {
  std::ostringstream os;
  os << "# " << r.meta << "\n";
  os << "theory,bc,alpha,lf_frac,Nx,Ny,quantity,value,reference,pct_error\n";
  for (const ReportRow& row : r.rows) {
    os << row.theory << "," << row.bc << "," << fmt(row.alpha) << ","
       << fmt(row.lf_frac) << "," << row.rate_x << "," << row.rate_y << ","
       << row.quantity << "," << fmt(row.value) << ",";
    if (row.reference) {
      double ref = *row.reference;
      os << fmt(ref) << "," << fmt(100.0 * (row.value - ref) / ref, "%.4f");
    } else {
      os << ",";
    }
    os << "\n";
  }
  return os.str();
}

void write_csv(const StudyResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_csv(r);
}

void export_matrices(const StudyConfig& cfg, const std::string& prefix) {
  StudyRunner run(cfg);
  double alpha = cfg.alphas.front();
  double lf = cfg.lf_fracs.front();
  auto [nx, ny] = run.mesh_for(lf);
  LoadSpec load = cfg.load == "mms" ? run.mms_load(alpha, lf) : run.udtl_load();
  AssembledSystem sys = run.assemble(alpha, lf, nx, ny, load);
  write_matrix_market_symmetric(sys.stiffness, prefix + ".K.mtx");
  write_matrix_market_symmetric(sys.mass, prefix + ".M.mtx");
}

InvariantReport check_system_invariants(const AssembledSystem& sys) {
  InvariantReport rep;
  const CsrMatrix& k = sys.stiffness;
  double kmax = k.max_abs();
  rep.symmetry_rel = k.max_asymmetry() / kmax;

  // rigid translations: constant u0, v0 and w0 fields
  for (int comp = 0; comp < 3; ++comp) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(sys.dofs.n_dofs());
    for (int n = 0; n < sys.dofs.n_nodes; ++n) e[sys.dofs.global(n, comp)] = 1.0;
    Eigen::VectorXd r = k.multiply(e);
    rep.rigid_rel = std::max(rep.rigid_rel,
                             r.cwiseAbs().maxCoeff() / kmax);
  }

  double le = std::max(sys.mesh.lex, sys.mesh.ley);
  double lf = sys.opts.alpha == 1.0 ? 0.0 : sys.opts.l_f;
  double bound = 2.0 * lf + 2.0 * le + 1e-9 * le;
  const int nxn = sys.mesh.nx + 1;
  const int dpn = sys.dofs.dofs_per_node;
  for (int i = 0; i < k.n_rows; ++i) {
    int ni = i / dpn;
    double xi = (ni % nxn) * sys.mesh.lex, yi = (ni / nxn) * sys.mesh.ley;
    for (int64_t p = k.row_ptr[i]; p < k.row_ptr[i + 1]; ++p) {
      if (k.val[p] == 0.0) continue;
      int nj = k.col[p] / dpn;
      double dx = std::abs((nj % nxn) * sys.mesh.lex - xi);
      double dy = std::abs((nj / nxn) * sys.mesh.ley - yi);
      if (dx > bound && dy > bound) ++rep.locality_violations;
    }
  }
  return rep;
}

}  // namespace fplate
