#include "plrom/precond/preconditioner.hpp"

#include <cmath>
#include <random>

namespace plrom::precond {

Kind kind_from_string(const std::string& name) {
  if (name == "none") return Kind::None;
  if (name == "jacobi") return Kind::Jacobi;
  if (name == "gs") return Kind::GaussSeidel;
  if (name == "sgs") return Kind::SymmetricGS;
  if (name == "ilu1") return Kind::Ilu1;
  if (name == "ideal") return Kind::Ideal;
  throw InvalidInput("unknown preconditioner kind: " + name);
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Jacobi: return "jacobi";
    case Kind::GaussSeidel: return "gs";
    case Kind::SymmetricGS: return "sgs";
    case Kind::Ilu1: return "ilu1";
    case Kind::Ideal: return "ideal";
  }
  throw InvalidInput("unknown preconditioner kind");
}

BuiltPreconditioner BuiltPreconditioner::build(Kind kind, const SparseMatrix& j,
                                               const BuildOptions& options) {
  if (j.rows() != j.cols()) throw DimensionMismatch("precond build: matrix not square");
  BuiltPreconditioner p;
  p.kind_ = kind;
  p.gs_direction_ = options.gs_direction;
  p.dim_ = j.rows();
  switch (kind) {
    case Kind::None:
      break;
    case Kind::Jacobi:
    case Kind::SymmetricGS: {
      p.inv_diag_ = j.diagonal();
      for (std::size_t i = 0; i < p.inv_diag_.size(); ++i) {
        if (p.inv_diag_[i] == 0.0)
          throw FactorizationError("precond build: zero diagonal", static_cast<int>(i));
        p.inv_diag_[i] = 1.0 / p.inv_diag_[i];
      }
      if (kind == Kind::SymmetricGS)
        p.matrix_ = std::make_shared<SparseMatrix>(j);
      break;
    }
    case Kind::GaussSeidel: {
      const Vector d = j.diagonal();
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == 0.0)
          throw FactorizationError("precond build: zero diagonal", static_cast<int>(i));
      p.matrix_ = std::make_shared<SparseMatrix>(j);
      break;
    }
    case Kind::Ilu1:
      p.ilu_ = std::make_shared<linalg::IluFactors>(j);
      break;
    case Kind::Ideal:
      if (j.rows() > options.ideal_size_cap)
        throw InvalidInput("precond build: system exceeds the Ideal size cap");
      p.lu_ = std::make_shared<linalg::LuFactors>(j);
      break;
  }
  return p;
}

BuiltPreconditioner build(Kind kind, const SparseMatrix& j, const BuildOptions& options) {
  return BuiltPreconditioner::build(kind, j, options);
}

namespace {

// (D+L)^{-1} v on CSR: forward substitution over the lower triangle.
Vector lower_solve(const SparseMatrix& j, std::span<const double> v) {
  const std::size_t n = j.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = v[i];
    double diag = 0.0;
    for (std::size_t p = j.offsets()[i]; p < j.offsets()[i + 1]; ++p) {
      const std::size_t c = j.col_idx()[p];
      if (c < i)
        s -= j.values()[p] * x[c];
      else if (c == i)
        diag = j.values()[p];
    }
    x[i] = s / diag;
  }
  return x;
}

// (D+U)^{-1} v: backward substitution over the upper triangle.
Vector upper_solve(const SparseMatrix& j, std::span<const double> v) {
  const std::size_t n = j.rows();
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = v[ii];
    double diag = 0.0;
    for (std::size_t p = j.offsets()[ii]; p < j.offsets()[ii + 1]; ++p) {
      const std::size_t c = j.col_idx()[p];
      if (c > ii)
        s -= j.values()[p] * x[c];
      else if (c == ii)
        diag = j.values()[p];
    }
    x[ii] = s / diag;
  }
  return x;
}

}  // namespace

Vector BuiltPreconditioner::apply(std::span<const double> v) const {
  if (v.size() != dim_) throw DimensionMismatch("precond apply: length mismatch");
  switch (kind_) {
    case Kind::None:
      return Vector(v.begin(), v.end());
    case Kind::Jacobi: {
      Vector x(dim_);
      for (std::size_t i = 0; i < dim_; ++i) x[i] = inv_diag_[i] * v[i];
      return x;
    }
    case Kind::GaussSeidel:
      return gs_direction_ == GsDirection::Forward ? lower_solve(*matrix_, v)
                                                   : upper_solve(*matrix_, v);
    case Kind::SymmetricGS: {
      // (D+U)^{-1} D (D+L)^{-1} v
      Vector x = lower_solve(*matrix_, v);
      for (std::size_t i = 0; i < dim_; ++i) x[i] /= inv_diag_[i];
      return upper_solve(*matrix_, x);
    }
    case Kind::Ilu1:
      return ilu_->solve(v);
    case Kind::Ideal:
      return lu_->solve(v);
  }
  throw InvalidInput("precond apply: unknown kind");
}

DenseMatrix BuiltPreconditioner::apply_to_matrix(const DenseMatrix& a) const {
  if (a.rows() != dim_) throw DimensionMismatch("precond apply_to_matrix: row mismatch");
  DenseMatrix out(a.rows(), a.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Vector col = apply(a.col(static_cast<std::size_t>(j)));
    out.set_col(static_cast<std::size_t>(j), col);
  }
  return out;
}

double quality_metric(const BuiltPreconditioner& p, const SparseMatrix& j, std::size_t probes,
                      std::uint64_t seed) {
  if (p.dim() != j.rows()) throw DimensionMismatch("quality_metric: dimension mismatch");
  const std::size_t n = j.rows();
  const double norm_i = std::sqrt(static_cast<double>(n));
  if (n <= 64) {
    double s = 0.0;
    Vector e(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      e[c] = 1.0;
      Vector col = p.apply(j.apply(e));
      e[c] = 0.0;
      col[c] -= 1.0;
      for (double x : col) s += x * x;
    }
    return std::sqrt(s) / norm_i;
  }
  // Hutchinson-style estimate of ||MJ - I||_F^2 with Gaussian probes
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double s = 0.0;
  for (std::size_t k = 0; k < probes; ++k) {
    Vector z(n);
    for (double& x : z) x = gauss(rng);
    Vector y = p.apply(j.apply(z));
    for (std::size_t i = 0; i < n; ++i) y[i] -= z[i];
    s += linalg::dot(y, y);
  }
  return std::sqrt(s / static_cast<double>(probes)) / norm_i;
}

}  // namespace plrom::precond
