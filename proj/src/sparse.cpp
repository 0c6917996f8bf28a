#include "sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace fplate {

Eigen::VectorXd CsrMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    double s = 0.0;
    for (int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
    y[i] = s;
  }
  return y;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : val) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::coeff(int i, int j) const {
  int64_t lo = row_ptr[i], hi = row_ptr[i + 1];
  const int32_t* first = col.data() + lo;
  const int32_t* last = col.data() + hi;
  const int32_t* it = std::lower_bound(first, last, j);
  if (it != last && *it == j) return val[lo + (it - first)];
  return 0.0;
}

double CsrMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n_rows; ++i)
    for (int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      int j = col[p];
      if (j < i) continue;  // visit each pair once
      m = std::max(m, std::abs(val[p] - coeff(j, i)));
    }
  return m;
}

CsrMatrix TripletBuilder::to_csr() const {
  std::vector<int64_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    if (rows[a] != rows[b]) return rows[a] < rows[b];
    return cols[a] < cols[b];
  });
  CsrMatrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_ptr.assign(n_rows + 1, 0);
  int32_t prev_r = -1, prev_c = -1;
  for (int64_t idx : order) {
    int32_t r = rows[idx], c = cols[idx];
    if (r == prev_r && c == prev_c) {
      m.val.back() += vals[idx];
      continue;
    }
    m.col.push_back(c);
    m.val.push_back(vals[idx]);
    m.row_ptr[r + 1] += 1;
    prev_r = r;
    prev_c = c;
  }
  for (int i = 0; i < n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

CsrMatrix extract_submatrix(const CsrMatrix& a, const std::vector<int32_t>& map,
                            int new_dim) {
  CsrMatrix m;
  m.n_rows = new_dim;
  m.n_cols = new_dim;
  m.row_ptr.assign(new_dim + 1, 0);
  // count pass
  for (int i = 0; i < a.n_rows; ++i) {
    int32_t ni = map[i];
    if (ni < 0) continue;
    int64_t cnt = 0;
    for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (map[a.col[p]] >= 0) ++cnt;
    m.row_ptr[ni + 1] = cnt;
  }
  for (int i = 0; i < new_dim; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  m.col.resize(m.row_ptr[new_dim]);
  m.val.resize(m.row_ptr[new_dim]);
  for (int i = 0; i < a.n_rows; ++i) {
    int32_t ni = map[i];
    if (ni < 0) continue;
    int64_t q = m.row_ptr[ni];
    for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      int32_t nj = map[a.col[p]];
      if (nj < 0) continue;
      m.col[q] = nj;
      m.val[q] = a.val[p];
      ++q;
    }
  }
  return m;
}

int band_halfwidth(const CsrMatrix& a) {
  int bw = 0;
  for (int i = 0; i < a.n_rows; ++i)
    for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      bw = std::max(bw, std::abs(a.col[p] - i));
  return bw;
}

void write_matrix_market_symmetric(const CsrMatrix& a, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  int64_t n_lower = 0;
  for (int i = 0; i < a.n_rows; ++i)
    for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (a.col[p] <= i) ++n_lower;
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
  std::fprintf(f, "%d %d %lld\n", a.n_rows, a.n_cols,
               static_cast<long long>(n_lower));
  for (int i = 0; i < a.n_rows; ++i)
    for (int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (a.col[p] <= i)
        std::fprintf(f, "%d %d %.17g\n", i + 1, a.col[p] + 1, a.val[p]);
  std::fclose(f);
}

}  // namespace fplate
