#include <cmath>

#include "plrom/pod/basis.hpp"

namespace plrom::pod {

ReducedBasis compute_pod_basis(const SnapshotSet& snapshots, std::size_t m) {
  const auto& w = snapshots.free_snapshots;
  if (m < 1 || m > std::min(w.rows(), w.cols()))
    throw InvalidInput("compute_pod_basis: M out of range");
  const linalg::SvdResult svd = linalg::thin_svd(w);
  ReducedBasis basis;
  basis.trial = svd.left_vectors.leading_cols(m);
  basis.singular_values = svd.singular_values;
  basis.dbc_basis = blocking_basis(snapshots.layout);
  basis.layout_hash = snapshots.layout.hash();
  return basis;
}

DenseMatrix blocking_basis(const DofLayout& layout) {
  if (layout.num_blocks() == 0) return DenseMatrix(0, 0);
  DenseMatrix phi(layout.num_dbc(), layout.num_blocks());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const auto& block = layout.blocks()[b];
    if (block.empty()) throw InvalidInput("blocking_basis: empty block");
    const double inv_norm = 1.0 / std::sqrt(static_cast<double>(block.size()));
    for (std::size_t dof : block) phi(layout.dbc_position(dof), b) = inv_norm;
  }
  return phi;
}

DenseMatrix augment_basis(const DenseMatrix& trial, const DenseMatrix& dbc_basis,
                          const DofLayout& layout) {
  if (trial.cols() == 0) throw InvalidInput("augment_basis: trial basis is empty");
  if (trial.rows() != layout.num_free() || dbc_basis.rows() != layout.num_dbc())
    throw DimensionMismatch("augment_basis: row counts do not match the layout");
  DenseMatrix phi(layout.total_dofs(), trial.cols() + dbc_basis.cols());
  for (std::size_t j = 0; j < trial.cols(); ++j)
    for (std::size_t i = 0; i < layout.num_free(); ++i)
      phi(layout.free_dofs()[i], j) = trial(i, j);
  for (std::size_t j = 0; j < dbc_basis.cols(); ++j)
    for (std::size_t i = 0; i < layout.num_dbc(); ++i)
      phi(layout.dbc_dofs()[i], trial.cols() + j) = dbc_basis(i, j);
  return phi;
}

std::size_t energy_truncation(const Vector& singular_values, double fraction) {
  if (fraction <= 0.0 || fraction > 1.0)
    throw InvalidInput("energy_truncation: fraction must be in (0, 1]");
  double total = 0.0;
  for (double s : singular_values) total += s * s;
  if (total == 0.0) throw InvalidInput("energy_truncation: all-zero spectrum");
  double acc = 0.0;
  for (std::size_t m = 0; m < singular_values.size(); ++m) {
    acc += singular_values[m] * singular_values[m];
    if (acc >= fraction * total) return m + 1;
  }
  return singular_values.size();
}

}  // namespace plrom::pod
