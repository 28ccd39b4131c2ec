#include "plrom/linalg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace plrom::linalg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> offsets, std::vector<std::size_t> col_idx,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), offsets_(std::move(offsets)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (offsets_.size() != rows_ + 1) throw InvalidInput("SparseMatrix: bad offsets length");
  if (offsets_.back() != values_.size() || col_idx_.size() != values_.size())
    throw InvalidInput("SparseMatrix: offsets/values inconsistent");
  for (std::size_t i = 0; i < rows_; ++i) {
    if (offsets_[i] > offsets_[i + 1]) throw InvalidInput("SparseMatrix: offsets not monotone");
    for (std::size_t p = offsets_[i]; p + 1 < offsets_[i + 1]; ++p)
      if (col_idx_[p] >= col_idx_[p + 1])
        throw InvalidInput("SparseMatrix: column indices not strictly increasing");
    if (offsets_[i] < offsets_[i + 1] && col_idx_[offsets_[i + 1] - 1] >= cols_)
      throw InvalidInput("SparseMatrix: column index out of range");
  }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> off(n + 1), ci(n);
  std::iota(off.begin(), off.end(), 0);
  std::iota(ci.begin(), ci.end(), 0);
  return SparseMatrix(n, n, std::move(off), std::move(ci), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& a, double drop_tol) {
  std::vector<std::size_t> off{0}, ci;
  std::vector<double> v;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > drop_tol || (i == j && a.rows() == a.cols())) {
        ci.push_back(j);
        v.push_back(a(i, j));
      }
    }
    off.push_back(ci.size());
  }
  return SparseMatrix(a.rows(), a.cols(), std::move(off), std::move(ci), std::move(v));
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::span<const std::size_t> ri,
                                         std::span<const std::size_t> ci,
                                         std::span<const double> v) {
  if (ri.size() != ci.size() || ri.size() != v.size())
    throw InvalidInput("from_triplets: length mismatch");
  std::vector<std::size_t> order(ri.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ri[a] != ri[b] ? ri[a] < ri[b] : ci[a] < ci[b];
  });
  std::vector<std::size_t> off(rows + 1, 0), cidx;
  std::vector<double> vals;
  cidx.reserve(ri.size());
  vals.reserve(ri.size());
  std::size_t prev_row = rows;  // sentinel
  std::size_t prev_col = 0;
  for (std::size_t k : order) {
    if (ri[k] >= rows || ci[k] >= cols) throw InvalidInput("from_triplets: index out of range");
    if (ri[k] == prev_row && ci[k] == prev_col) {
      vals.back() += v[k];
    } else {
      cidx.push_back(ci[k]);
      vals.push_back(v[k]);
      prev_row = ri[k];
      prev_col = ci[k];
    }
    off[ri[k] + 1] = vals.size();
  }
  for (std::size_t i = 1; i <= rows; ++i) off[i] = std::max(off[i], off[i - 1]);
  return SparseMatrix(rows, cols, std::move(off), std::move(cidx), std::move(vals));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p)
    if (col_idx_[p] == j) return values_[p];
  return 0.0;
}

Vector SparseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionMismatch("SparseMatrix::apply: size mismatch");
  Vector y(rows_);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rows_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t p = offsets_[static_cast<std::size_t>(i)];
         p < offsets_[static_cast<std::size_t>(i) + 1]; ++p)
      s += values_[p] * x[col_idx_[p]];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix a(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) a(i, col_idx_[p]) = values_[p];
  return a;
}

Vector SparseMatrix::diagonal() const {
  Vector d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

}  // namespace plrom::linalg
