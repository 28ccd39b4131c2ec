#include "plrom/pod/basis.hpp"

namespace plrom::pod {

SnapshotSet assemble_snapshots(const std::vector<Vector>& states, const DofLayout& layout,
                               const Vector& reference, std::vector<std::string> labels) {
  if (states.empty()) throw InvalidInput("assemble_snapshots: no states");
  if (reference.size() != layout.total_dofs())
    throw DimensionMismatch("assemble_snapshots: reference length mismatch");
  SnapshotSet set;
  set.layout = layout;
  set.reference_state = reference;
  set.free_snapshots = DenseMatrix(layout.num_free(), states.size());
  for (std::size_t p = 0; p < states.size(); ++p) {
    if (states[p].size() != layout.total_dofs())
      throw DimensionMismatch("assemble_snapshots: state length mismatch");
    for (std::size_t i = 0; i < layout.num_free(); ++i) {
      const std::size_t d = layout.free_dofs()[i];
      set.free_snapshots(i, p) = states[p][d] - reference[d];
    }
  }
  if (!labels.empty() && labels.size() != states.size())
    throw InvalidInput("assemble_snapshots: label count mismatch");
  set.column_labels = std::move(labels);
  return set;
}

}  // namespace plrom::pod
