#include "linsolve.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace fplate {

namespace {

class BandSolver : public SpdSolver {
 public:
  explicit BandSolver(const CsrMatrix& a) {
    n_ = a.n_rows;
    kd_ = band_halfwidth(a);
    ab_.assign(static_cast<size_t>(kd_ + 1) * n_, 0.0);
    // LAPACK lower band, column-major: ab[i - j + (kd+1)*j] = A(i,j), j <= i.
    for (int i = 0; i < a.n_rows; ++i)
      for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
        int j = a.col[p];
        if (j <= i) ab_[static_cast<size_t>(kd_ + 1) * j + (i - j)] = a.val[p];
      }
    int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'L', n_, kd_, ab_.data(),
                              kd_ + 1);
    if (info != 0)
      throw std::runtime_error(
          "banded Cholesky failed (matrix not positive definite?), info=" +
          std::to_string(info));
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    Eigen::VectorXd x = rhs;
    int info = LAPACKE_dpbtrs(LAPACK_COL_MAJOR, 'L', n_, kd_, 1, ab_.data(),
                              kd_ + 1, x.data(), n_);
    if (info != 0) throw std::runtime_error("dpbtrs failed");
    return x;
  }
  const char* kind() const override { return "band"; }

 private:
  int n_ = 0, kd_ = 0;
  std::vector<double> ab_;
};

class DenseSolver : public SpdSolver {
 public:
  explicit DenseSolver(const CsrMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.n_rows, a.n_cols);
    for (int i = 0; i < a.n_rows; ++i)
      for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
        d(i, a.col[p]) = a.val[p];
    llt_.compute(d);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("dense Cholesky failed (not positive definite?)");
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    return llt_.solve(rhs);
  }
  const char* kind() const override { return "dense"; }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

class PcgSolver : public SpdSolver {
 public:
  PcgSolver(const CsrMatrix& a, const CsrMatrix& precond, double rel_tol,
            int max_iter)
      : a_(a), tol_(rel_tol), max_iter_(max_iter) {
    if (precond.n_rows != a.n_rows)
      throw std::invalid_argument("pcg: preconditioner dimension mismatch");
    prec_ = std::make_unique<BandSolver>(precond);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
    Eigen::VectorXd r = rhs;
    double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) return x;
    Eigen::VectorXd z = prec_->solve(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < max_iter_; ++it) {
      Eigen::VectorXd ap = a_.multiply(p);
      double alpha = rz / p.dot(ap);
      x += alpha * p;
      r -= alpha * ap;
      if (r.norm() <= tol_ * rhs_norm) return x;
      z = prec_->solve(r);
      double rz_new = r.dot(z);
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
    throw std::runtime_error("pcg: no convergence within iteration budget");
  }
  const char* kind() const override { return "pcg"; }

 private:
  const CsrMatrix& a_;
  std::unique_ptr<BandSolver> prec_;
  double tol_;
  int max_iter_;
};

}  // namespace

std::unique_ptr<SpdSolver> make_band_solver(const CsrMatrix& a) {
  return std::make_unique<BandSolver>(a);
}
std::unique_ptr<SpdSolver> make_dense_solver(const CsrMatrix& a) {
  return std::make_unique<DenseSolver>(a);
}
std::unique_ptr<SpdSolver> make_pcg_solver(const CsrMatrix& a,
                                           const CsrMatrix& precond,
                                           double rel_tol, int max_iter) {
  return std::make_unique<PcgSolver>(a, precond, rel_tol, max_iter);
}

std::unique_ptr<SpdSolver> make_spd_solver(const CsrMatrix& a,
                                           const SolverPolicy& policy) {
  if (a.n_rows <= policy.dense_threshold) return make_dense_solver(a);
  int kd = band_halfwidth(a);
  double mem = 8.0 * (kd + 1.0) * a.n_rows;
  if (mem <= policy.band_mem_limit_bytes) return make_band_solver(a);
  if (!policy.precond_provider)
    throw std::runtime_error(
        "make_spd_solver: band exceeds memory budget and no preconditioner "
        "provider is configured");
  CsrMatrix precond = policy.precond_provider();  // band factor copies it
  return make_pcg_solver(a, precond);
}

EigResult lowest_eigenpairs(const CsrMatrix& k, const CsrMatrix& m,
                            int n_modes, const SolverPolicy& policy,
                            double tol) {
  const int n = k.n_rows;
  if (n_modes < 1 || n_modes > n)
    throw std::invalid_argument("lowest_eigenpairs: bad mode count");

  if (n <= policy.dense_threshold) {
    Eigen::MatrixXd kd = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd md = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int64_t p = k.row_ptr[i]; p < k.row_ptr[i + 1]; ++p)
        kd(i, k.col[p]) = k.val[p];
      for (int64_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p)
        md(i, m.col[p]) = m.val[p];
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(kd, md);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("dense generalized eigensolver failed");
    EigResult out;
    out.values = es.eigenvalues().head(n_modes);
    out.vectors = es.eigenvectors().leftCols(n_modes);
    return out;
  }

  // Shift-invert Lanczos at sigma = 0 on OP = K^-1 M in the M-inner product.
  std::unique_ptr<SpdSolver> kinv = make_spd_solver(k, policy);
  const int max_basis = std::min(n, std::max(4 * n_modes + 20, 40));
  Eigen::MatrixXd q(n, max_basis + 1);
  std::vector<double> diag, offd;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  for (int i = 0; i < n; ++i) v[i] += 1e-3 * std::sin(1000.0 * (i + 1));
  Eigen::VectorXd mv = m.multiply(v);
  double beta = std::sqrt(v.dot(mv));
  q.col(0) = v / beta;

  EigResult out;
  int built = 0;
  for (int j = 0; j < max_basis; ++j) {
    Eigen::VectorXd w = kinv->solve(m.multiply(q.col(j)));
    if (j > 0) w -= offd[j - 1] * q.col(j - 1);
    double a = w.dot(m.multiply(q.col(j)));
    w -= a * q.col(j);
    // full reorthogonalization (twice) against the built basis
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd mw = m.multiply(w);
      for (int i = 0; i <= j; ++i) w -= q.col(i).dot(mw) * q.col(i);
    }
    diag.push_back(a);
    double b = std::sqrt(std::max(0.0, w.dot(m.multiply(w))));
    built = j + 1;

    bool last = (b < 1e-14) || (j == max_basis - 1);
    if (!last && built < n_modes + 2) {
      offd.push_back(b);
      q.col(j + 1) = w / b;
      continue;
    }
    // Ritz values of the tridiagonal: theta ~= 1/lambda, largest first.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
    for (int i = 0; i < built; ++i) {
      t(i, i) = diag[i];
      if (i + 1 < built) t(i, i + 1) = t(i + 1, i) = offd[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(t);
    int nm = std::min(n_modes, built);
    // residual bound |b * s_last| for the nm largest thetas
    bool converged = true;
    for (int i = 0; i < nm; ++i) {
      int idx = built - 1 - i;
      double theta = tes.eigenvalues()(idx);
      double res = std::abs(b * tes.eigenvectors()(built - 1, idx));
      if (res > tol * std::abs(theta)) converged = false;
    }
    if (converged || last) {
      if (nm < n_modes)
        throw std::runtime_error("lowest_eigenpairs: basis exhausted early");
      out.values.resize(n_modes);
      out.vectors.resize(n, n_modes);
      for (int i = 0; i < n_modes; ++i) {
        int idx = built - 1 - i;
        double theta = tes.eigenvalues()(idx);
        if (!(theta > 0.0))
          throw std::runtime_error("lowest_eigenpairs: nonpositive Ritz value");
        out.values[i] = 1.0 / theta;
        Eigen::VectorXd x = q.leftCols(built) * tes.eigenvectors().col(idx);
        double nrm = std::sqrt(x.dot(m.multiply(x)));
        out.vectors.col(i) = x / nrm;
      }
      return out;
    }
    offd.push_back(b);
    q.col(j + 1) = w / b;
  }
  throw std::runtime_error("lowest_eigenpairs: Lanczos did not converge");
}

}  // namespace fplate
