#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace fplate {

// Compressed sparse row with 64-bit row offsets (row counts stay in int32
// range but nonzero counts may not).
struct CsrMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int64_t> row_ptr;
  std::vector<int32_t> col;
  std::vector<double> val;

  int64_t nnz() const { return static_cast<int64_t>(col.size()); }
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  double max_abs() const;
  // max |A_ij - A_ji| over stored entries (missing mirror counts as zero).
  double max_asymmetry() const;
  double coeff(int i, int j) const;
};

// Accumulating COO builder for small/local matrices (mass, local stiffness).
struct TripletBuilder {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int32_t> rows;
  std::vector<int32_t> cols;
  std::vector<double> vals;

  void add(int i, int j, double v) {
    rows.push_back(i);
    cols.push_back(j);
    vals.push_back(v);
  }
  CsrMatrix to_csr() const;  // duplicates summed, columns sorted
};

// Extracts rows/cols given by map (old index -> new index, -1 = dropped).
CsrMatrix extract_submatrix(const CsrMatrix& a, const std::vector<int32_t>& map,
                            int new_dim);

// Symmetric band half-width max|i-j| over the stored pattern.
int band_halfwidth(const CsrMatrix& a);

// Matrix Market coordinate export, symmetric storage (lower triangle).
void write_matrix_market_symmetric(const CsrMatrix& a, const std::string& path);

}  // namespace fplate
