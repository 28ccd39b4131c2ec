#pragma once

#include <filesystem>

#include "plrom/linalg/dense_matrix.hpp"

namespace plrom::linalg {

/// Plain-text format: header "rows cols", then whitespace-separated values
/// in column-major order at 17 significant digits (exact double round-trip).
void write_matrix(const std::filesystem::path& path, const DenseMatrix& a);
DenseMatrix read_matrix(const std::filesystem::path& path);

}  // namespace plrom::linalg
