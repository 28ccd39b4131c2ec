#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plrom/error.hpp"

namespace plrom::linalg {

using Vector = std::vector<double>;

/// Column-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void set_col(std::size_t j, std::span<const double> v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// First `m` columns as a new matrix.
  DenseMatrix leading_cols(std::size_t m) const {
    if (m > cols_) throw DimensionMismatch("leading_cols: m exceeds column count");
    DenseMatrix out(rows_, m);
    std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(m * rows_),
              out.data_.begin());
    return out;
  }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Basic kernels. The omp versions parallelize over output columns; the
// serial:: twins are the reference implementations the tests compare against.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);  // A^T B
Vector matvec(const DenseMatrix& a, std::span<const double> x);
Vector matvec_t(const DenseMatrix& a, std::span<const double> x);  // A^T x

namespace serial {
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
}  // namespace serial

double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double frobenius_norm(const DenseMatrix& a);

}  // namespace plrom::linalg
