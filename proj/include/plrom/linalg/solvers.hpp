#pragma once

#include <cstdint>

#include "plrom/linalg/dense_matrix.hpp"
#include "plrom/linalg/sparse_matrix.hpp"

namespace plrom::linalg {

/// Cholesky solve for a symmetric positive definite system.
/// Symmetry is checked to 1e-12 relative; failure of either check throws
/// FactorizationError with the pivot index.
Vector solve_dense_spd(const DenseMatrix& a, std::span<const double> b);

/// Dense LU with partial pivoting (stored densely; intended for the modest
/// system sizes the Ideal preconditioner is gated to).
class LuFactors {
 public:
  explicit LuFactors(const SparseMatrix& a);
  explicit LuFactors(const DenseMatrix& a);
  Vector solve(std::span<const double> b) const;
  std::size_t dim() const { return lu_.rows(); }

 private:
  void factor();
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

LuFactors lu_factor(const SparseMatrix& a);

/// ILU with level-of-fill 1, no pivoting. Zero diagonal pivot throws.
class IluFactors {
 public:
  explicit IluFactors(const SparseMatrix& a);
  /// y = U^{-1} L^{-1} v within the level-1 fill pattern.
  Vector solve(std::span<const double> v) const;
  const SparseMatrix& factors() const { return lu_; }  // L (unit diag) and U merged

 private:
  SparseMatrix lu_;
  std::vector<std::size_t> diag_pos_;
};

IluFactors ilu1_factor(const SparseMatrix& a);

enum class KrylovMethod : std::uint8_t { Cg, Gmres };

struct IterativeResult {
  Vector x;
  std::size_t iterations = 0;
  bool converged = false;
};

/// CG or restarted GMRES(30). ||Ax - b|| <= tol * ||b|| on success.
IterativeResult solve_iterative(const SparseMatrix& a, std::span<const double> b,
                                KrylovMethod method, double tol = 1e-10,
                                std::size_t max_iter = 1000);

}  // namespace plrom::linalg
