#pragma once

#include <cstdint>
#include <vector>

#include "plrom/error.hpp"

namespace plrom::fom {

/// Partition of the extended dof set into free dofs and Dirichlet dofs,
/// with the Dirichlet dofs grouped into blocks of common constraints.
class DofLayout {
 public:
  DofLayout() = default;
  DofLayout(std::size_t total_dofs, std::vector<std::size_t> free_dofs,
            std::vector<std::vector<std::size_t>> dbc_blocks);

  std::size_t total_dofs() const { return total_dofs_; }
  std::size_t num_free() const { return free_dofs_.size(); }
  std::size_t num_dbc() const { return dbc_dofs_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }

  const std::vector<std::size_t>& free_dofs() const { return free_dofs_; }
  const std::vector<std::size_t>& dbc_dofs() const { return dbc_dofs_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

  bool is_dbc(std::size_t dof) const { return dbc_mask_[dof]; }
  /// Position of `dof` within dbc_dofs(); valid only when is_dbc(dof).
  std::size_t dbc_position(std::size_t dof) const { return dbc_pos_[dof]; }

  /// FNV-1a over the index structure; persisted with bases to detect mismatch.
  std::uint64_t hash() const;

 private:
  std::size_t total_dofs_ = 0;
  std::vector<std::size_t> free_dofs_;
  std::vector<std::size_t> dbc_dofs_;  // concatenation of blocks, ascending
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<char> dbc_mask_;
  std::vector<std::size_t> dbc_pos_;
};

}  // namespace plrom::fom
