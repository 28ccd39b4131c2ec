#pragma once

#include <string>
#include <vector>

#include "plrom/fom/dof_layout.hpp"
#include "plrom/linalg/svd.hpp"

namespace plrom::pod {

using fom::DofLayout;
using linalg::DenseMatrix;
using linalg::Vector;

/// Snapshot columns restricted to free dofs, with the reference state
/// already subtracted.
struct SnapshotSet {
  DenseMatrix free_snapshots;  // N x P
  Vector reference_state;      // length total_dofs
  DofLayout layout;
  std::vector<std::string> column_labels;
};

SnapshotSet assemble_snapshots(const std::vector<Vector>& states, const DofLayout& layout,
                               const Vector& reference,
                               std::vector<std::string> labels = {});

/// Trial POD basis plus the blocking-vector Dirichlet basis.
struct ReducedBasis {
  DenseMatrix trial;       // N x M, orthonormal
  DenseMatrix dbc_basis;   // N_DBC x M_DBC, one normalized indicator per block
  Vector singular_values;  // full spectrum, for diagnostics
  std::uint64_t layout_hash = 0;

  std::size_t trial_dim() const { return trial.cols(); }
  std::size_t dbc_dim() const { return dbc_basis.cols(); }
};

/// Leading M left singular vectors of the free-snapshot matrix.
ReducedBasis compute_pod_basis(const SnapshotSet& snapshots, std::size_t m);

/// Column i = b_i / ||b_i|| with b_i the indicator of DBC block C_i.
DenseMatrix blocking_basis(const DofLayout& layout);

/// Block-diagonal augmented basis on the extended dof ordering:
/// trial columns scattered to free dofs, blocking columns to DBC dofs.
DenseMatrix augment_basis(const DenseMatrix& trial, const DenseMatrix& dbc_basis,
                          const DofLayout& layout);

/// Smallest M with sum_{i<=M} s_i^2 >= fraction * sum s_i^2.
std::size_t energy_truncation(const Vector& singular_values, double fraction);

}  // namespace plrom::pod
