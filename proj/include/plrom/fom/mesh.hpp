#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "plrom/error.hpp"

namespace plrom::fom {

/// Structured quadrilateral grid on [0,lx] x [0,ly], nodes numbered
/// row-major (x fastest). Elements are split into `num_blocks` material
/// blocks by equal x-ranges.
struct QuadMesh {
  QuadMesh(std::size_t nx, std::size_t ny, double lx, double ly, std::size_t num_blocks = 1);

  std::size_t nx, ny;
  double lx, ly;
  std::vector<std::array<double, 2>> coords;            // per node
  std::vector<std::array<std::size_t, 4>> elements;     // ccw node ids
  std::vector<std::size_t> element_block;               // block id per element

  std::size_t num_nodes() const { return coords.size(); }
  std::size_t num_elements() const { return elements.size(); }

  std::vector<std::size_t> left_nodes() const;
  std::vector<std::size_t> right_nodes() const;
  std::vector<std::size_t> bottom_nodes() const;
  std::vector<std::size_t> top_nodes() const;

  /// Boundary edges on the top side as (element, local edge index).
  std::vector<std::pair<std::size_t, std::size_t>> top_edges() const;
  std::vector<std::pair<std::size_t, std::size_t>> bottom_edges() const;
};

}  // namespace plrom::fom
