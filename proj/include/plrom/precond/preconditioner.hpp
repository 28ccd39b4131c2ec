#pragma once

#include <memory>
#include <optional>
#include <string>

#include "plrom/linalg/solvers.hpp"

namespace plrom::precond {

using linalg::DenseMatrix;
using linalg::SparseMatrix;
using linalg::Vector;

enum class Kind { None, Jacobi, GaussSeidel, SymmetricGS, Ilu1, Ideal };

Kind kind_from_string(const std::string& name);  // none|jacobi|gs|sgs|ilu1|ideal
std::string to_string(Kind kind);

/// Gauss-Seidel sweep direction. Forward uses (D+L)^{-1}; Backward uses
/// (D+U)^{-1}, the literal reading of "upper triangular part".
enum class GsDirection { Forward, Backward };

struct BuildOptions {
  GsDirection gs_direction = GsDirection::Forward;
  /// The Ideal kind refactors the full Jacobian each time it is built;
  /// refuse beyond this system size.
  std::size_t ideal_size_cap = 5000;
};

/// Approximate Jacobian inverse M ~= J^{-1}, built from one Jacobian and
/// immutable afterwards; applies are safe to run concurrently.
class BuiltPreconditioner {
 public:
  static BuiltPreconditioner build(Kind kind, const SparseMatrix& j,
                                   const BuildOptions& options = {});

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  Vector apply(std::span<const double> v) const;
  DenseMatrix apply_to_matrix(const DenseMatrix& a) const;

 private:
  BuiltPreconditioner() = default;
  Kind kind_ = Kind::None;
  GsDirection gs_direction_ = GsDirection::Forward;
  std::size_t dim_ = 0;
  Vector inv_diag_;                                // Jacobi, SymmetricGS
  std::shared_ptr<const SparseMatrix> matrix_;     // GS / SGS triangular sweeps
  std::shared_ptr<const linalg::IluFactors> ilu_;
  std::shared_ptr<const linalg::LuFactors> lu_;    // Ideal
};

BuiltPreconditioner build(Kind kind, const SparseMatrix& j, const BuildOptions& options = {});

/// ||M J - I||_F / ||I||_F, exact for n <= 64, random-probe estimate above.
double quality_metric(const BuiltPreconditioner& p, const SparseMatrix& j,
                      std::size_t probes = 8, std::uint64_t seed = 0);

}  // namespace plrom::precond
