#pragma once

#include "plrom/linalg/dense_matrix.hpp"

namespace plrom::linalg {

struct SvdResult {
  DenseMatrix left_vectors;    // N x P, orthonormal columns
  Vector singular_values;      // non-increasing, >= 0
  DenseMatrix right_vectors;   // P x P, orthonormal columns
};

/// Thin SVD by one-sided Jacobi rotations. Deterministic: the
/// largest-magnitude entry of each left singular vector is made positive
/// (first such entry on ties), with the matching right vector flipped.
SvdResult thin_svd(const DenseMatrix& a);

/// sigma_max / sigma_min; +inf when sigma_min == 0.
double condition_number_2norm(const DenseMatrix& a);

}  // namespace plrom::linalg
