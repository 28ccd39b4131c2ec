#include "plrom/fom/mesh.hpp"

namespace plrom::fom {

QuadMesh::QuadMesh(std::size_t nx_, std::size_t ny_, double lx_, double ly_,
                   std::size_t num_blocks)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (nx == 0 || ny == 0 || lx <= 0.0 || ly <= 0.0 || num_blocks == 0)
    throw MeshError("QuadMesh: degenerate dimensions");
  coords.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i)
      coords.push_back({lx * static_cast<double>(i) / static_cast<double>(nx),
                        ly * static_cast<double>(j) / static_cast<double>(ny)});
  elements.reserve(nx * ny);
  element_block.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t n0 = j * (nx + 1) + i;
      elements.push_back({n0, n0 + 1, n0 + nx + 2, n0 + nx + 1});
      element_block.push_back(std::min(i * num_blocks / nx, num_blocks - 1));
    }
  }
}

std::vector<std::size_t> QuadMesh::left_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= ny; ++j) out.push_back(j * (nx + 1));
  return out;
}

std::vector<std::size_t> QuadMesh::right_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= ny; ++j) out.push_back(j * (nx + 1) + nx);
  return out;
}

std::vector<std::size_t> QuadMesh::bottom_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= nx; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> QuadMesh::top_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= nx; ++i) out.push_back(ny * (nx + 1) + i);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> QuadMesh::top_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < nx; ++i) out.emplace_back((ny - 1) * nx + i, 2);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> QuadMesh::bottom_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < nx; ++i) out.emplace_back(i, 0);
  return out;
}

}  // namespace plrom::fom
