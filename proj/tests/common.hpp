#pragma once

#include <random>

#include "plrom/fom/problem.hpp"

namespace plrom::test {

using fom::DofLayout;
using fom::FomProblem;
using linalg::DenseMatrix;
using linalg::SparseMatrix;
using linalg::Vector;

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix a(rows, cols);
  for (auto& v : a.data()) v = g(rng);
  return a;
}

inline Vector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

/// Random diagonally dominant sparse system (banded), non-singular.
inline SparseMatrix random_dd_sparse(std::size_t n, std::uint64_t seed,
                                     std::size_t bandwidth = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t d = i > j ? i - j : j - i;
      if (d <= bandwidth) {
        a(i, j) = u(rng);
        off += std::abs(a(i, j));
      }
    }
    a(i, i) = off + 1.0 + std::abs(u(rng));
  }
  return SparseMatrix::from_dense(a);
}

/// Linear full-order problem A w = b(t) with optional DBC blocks; the
/// assembled parts ignore the constraints, matching the built-in problems.
class LinearProblem : public FomProblem {
 public:
  LinearProblem(SparseMatrix a, Vector b, DofLayout layout, Vector dbc_rate = {})
      : a_(std::move(a)), b_(std::move(b)), layout_(std::move(layout)),
        dbc_rate_(std::move(dbc_rate)) {
    if (dbc_rate_.empty()) dbc_rate_.assign(layout_.num_dbc(), 0.0);
  }

  const DofLayout& layout() const override { return layout_; }
  const std::map<std::string, double>& parameters() const override { return params_; }

  Vector dirichlet_values(double t) const override {
    Vector g(layout_.num_dbc());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = dbc_rate_[i] * t;
    return g;
  }

  Vector assembled_residual(std::span<const double> state, double t) const override {
    Vector r = a_.apply(state);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= t * b_[i];
    return r;
  }

  SparseMatrix assembled_jacobian(std::span<const double>, double) const override {
    return a_;
  }

 private:
  SparseMatrix a_;
  Vector b_;
  DofLayout layout_;
  Vector dbc_rate_;
  std::map<std::string, double> params_;
};

/// Componentwise r_i(w) = w_i^p - c_i, unconstrained.
class PowerProblem : public FomProblem {
 public:
  PowerProblem(Vector c, double p) : c_(std::move(c)), p_(p) {
    std::vector<std::size_t> free(c_.size());
    for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
    layout_ = DofLayout(c_.size(), std::move(free), {});
  }

  const DofLayout& layout() const override { return layout_; }
  const std::map<std::string, double>& parameters() const override { return params_; }
  Vector dirichlet_values(double) const override { return {}; }

  Vector assembled_residual(std::span<const double> state, double) const override {
    Vector r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::pow(state[i], p_) - c_[i];
    return r;
  }

  SparseMatrix assembled_jacobian(std::span<const double> state, double) const override {
    const std::size_t n = c_.size();
    std::vector<std::size_t> offs(n + 1), cols(n);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
      offs[i + 1] = i + 1;
      cols[i] = i;
      vals[i] = p_ * std::pow(state[i], p_ - 1.0);
    }
    return SparseMatrix(n, n, std::move(offs), std::move(cols), std::move(vals));
  }

 private:
  Vector c_;
  double p_;
  DofLayout layout_;
  std::map<std::string, double> params_;
};

}  // namespace plrom::test
