#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plrom/error.hpp"
#include "plrom/linalg/dense_matrix.hpp"

namespace plrom::linalg {

/// Compressed sparse row matrix. Column indices strictly increasing per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> offsets,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const DenseMatrix& a, double drop_tol = 0.0);

  /// Builder for assembly: coordinate triplets, duplicates summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::span<const std::size_t> ri,
                                    std::span<const std::size_t> ci,
                                    std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double at(std::size_t i, std::size_t j) const;  // 0 if not stored

  Vector apply(std::span<const double> x) const;  // A x
  DenseMatrix to_dense() const;

  /// Diagonal entries (0 where structurally absent).
  Vector diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace plrom::linalg
