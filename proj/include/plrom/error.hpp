#pragma once

#include <stdexcept>
#include <string>

namespace plrom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Factorization failed; `index` is the offending pivot/diagonal position.
struct FactorizationError : Error {
  int index;
  FactorizationError(const std::string& what, int idx) : Error(what), index(idx) {}
};

/// Zero denominator in a Krylov recurrence.
struct Breakdown : Error {
  using Error::Error;
};

struct NonConvergence : Error {
  double final_residual;
  NonConvergence(const std::string& what, double res) : Error(what), final_residual(res) {}
};

struct MeshError : Error {
  using Error::Error;
};

/// det(F) <= 0 at a quadrature point; residual evaluation is not possible.
struct ElementInversion : Error {
  using Error::Error;
};

}  // namespace plrom
