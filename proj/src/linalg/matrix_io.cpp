#include "plrom/linalg/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace plrom::linalg {

void write_matrix(const std::filesystem::path& path, const DenseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("write_matrix: cannot open " + path.string());
  out << a.rows() << " " << a.cols() << "\n";
  char buf[32];
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      out << buf << (i + 1 == a.rows() ? '\n' : ' ');
    }
  }
  if (!out) throw Error("write_matrix: write failed for " + path.string());
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_matrix: cannot open " + path.string());
  std::size_t rows = 0, cols = 0;
  in >> rows >> cols;
  if (!in) throw Error("read_matrix: bad header in " + path.string());
  DenseMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) in >> a(i, j);
  if (!in) throw Error("read_matrix: truncated data in " + path.string());
  return a;
}

}  // namespace plrom::linalg
