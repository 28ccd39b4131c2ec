#include "plrom/fom/dof_layout.hpp"

#include <algorithm>

namespace plrom::fom {

DofLayout::DofLayout(std::size_t total_dofs, std::vector<std::size_t> free_dofs,
                     std::vector<std::vector<std::size_t>> dbc_blocks)
    : total_dofs_(total_dofs), free_dofs_(std::move(free_dofs)), blocks_(std::move(dbc_blocks)) {
  dbc_mask_.assign(total_dofs_, 0);
  dbc_pos_.assign(total_dofs_, 0);
  for (const auto& block : blocks_) {
    if (block.empty()) throw InvalidInput("DofLayout: empty DBC block");
    for (std::size_t dof : block) {
      if (dof >= total_dofs_) throw InvalidInput("DofLayout: DBC dof out of range");
      if (dbc_mask_[dof]) throw InvalidInput("DofLayout: dof in more than one DBC block");
      dbc_mask_[dof] = 1;
      dbc_pos_[dof] = dbc_dofs_.size();
      dbc_dofs_.push_back(dof);
    }
  }
  std::vector<char> seen(total_dofs_, 0);
  for (std::size_t dof : free_dofs_) {
    if (dof >= total_dofs_ || dbc_mask_[dof] || seen[dof])
      throw InvalidInput("DofLayout: free/DBC sets overlap or repeat");
    seen[dof] = 1;
  }
  if (free_dofs_.size() + dbc_dofs_.size() != total_dofs_)
    throw InvalidInput("DofLayout: free and DBC sets do not cover all dofs");
}

std::uint64_t DofLayout::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(total_dofs_);
  for (std::size_t d : free_dofs_) mix(d);
  mix(0xfffffffffffffffeull);
  for (const auto& block : blocks_) {
    for (std::size_t d : block) mix(d);
    mix(0xffffffffffffffffull);
  }
  return h;
}

}  // namespace plrom::fom
