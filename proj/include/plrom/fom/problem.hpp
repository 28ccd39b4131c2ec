#pragma once

#include <map>
#include <string>

#include "plrom/fom/dof_layout.hpp"
#include "plrom/linalg/sparse_matrix.hpp"

namespace plrom::fom {

using linalg::DenseMatrix;
using linalg::SparseMatrix;
using linalg::Vector;

/// Full-order nonlinear problem in extended form: Dirichlet dofs are kept
/// in the system. DBC rows of the residual read w_dbc - g(t) with a unit
/// diagonal in the Jacobian, so converged states satisfy the constraints
/// exactly and the constrained rows decouple from the free ones.
class FomProblem {
 public:
  virtual ~FomProblem() = default;

  virtual const DofLayout& layout() const = 0;
  virtual const std::map<std::string, double>& parameters() const = 0;

  /// Prescribed values g(t), aligned with layout().dbc_dofs().
  virtual Vector dirichlet_values(double t) const = 0;

  /// Assembled PDE residual over all rows, Neumann loads included,
  /// Dirichlet constraints ignored. Throws ElementInversion when the
  /// state is outside the evaluable domain.
  virtual Vector assembled_residual(std::span<const double> state, double t) const = 0;
  virtual SparseMatrix assembled_jacobian(std::span<const double> state, double t) const = 0;

  std::size_t num_dofs() const { return layout().total_dofs(); }

  /// Extended residual: assembled rows on free dofs, w_dbc - g(t) on DBC rows.
  Vector residual(std::span<const double> state, double t) const;

  /// Extended Jacobian per the block-diagonal convention: DBC rows are a
  /// unit diagonal; DBC columns in free rows are zeroed unless
  /// `zero_dbc_columns` is false (kept for the decoupling test).
  SparseMatrix jacobian(std::span<const double> state, double t,
                        bool zero_dbc_columns = true) const;

  /// Zero state with the Dirichlet values at `t` imposed; overridable for
  /// problems whose at-rest state is not zero.
  virtual Vector initial_state(double t) const;
};

}  // namespace plrom::fom
