#include "plrom/linalg/dense_matrix.hpp"

#include <cmath>

namespace plrom::linalg {

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

void check_mm(const DenseMatrix& a, const DenseMatrix& b, bool transpose_a) {
  const std::size_t inner = transpose_a ? a.rows() : a.cols();
  if (inner != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  check_mm(a, b, false);
  DenseMatrix c(a.rows(), b.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(b.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    auto cj = c.col(static_cast<std::size_t>(j));
    auto bj = b.col(static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = bj[k];
      if (bkj == 0.0) continue;
      auto ak = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  check_mm(a, b, true);
  DenseMatrix c(a.cols(), b.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(b.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    auto bj = b.col(static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < a.cols(); ++i)
      c(i, static_cast<std::size_t>(j)) = dot(a.col(i), bj);
  }
  return c;
}

namespace serial {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  check_mm(a, b, false);
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto cj = c.col(j);
    auto bj = b.col(j);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = bj[k];
      if (bkj == 0.0) continue;
      auto ak = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  check_mm(a, b, true);
  DenseMatrix c(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) c(i, j) = dot(a.col(i), b.col(j));
  return c;
}

}  // namespace serial

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw DimensionMismatch("matvec: size mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    auto aj = a.col(j);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += aj[i] * xj;
  }
  return y;
}

Vector matvec_t(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) throw DimensionMismatch("matvec_t: size mismatch");
  Vector y(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) y[j] = dot(a.col(j), x);
  return y;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double frobenius_norm(const DenseMatrix& a) { return norm2(a.data()); }

}  // namespace plrom::linalg
