#include <cmath>

#include "plrom/lspg/lspg.hpp"

namespace plrom::lspg {

namespace {

// J * Phi, columnwise.
DenseMatrix sparse_times_dense(const SparseMatrix& j, const DenseMatrix& phi) {
  DenseMatrix out(j.rows(), phi.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(phi.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const Vector col = j.apply(phi.col(static_cast<std::size_t>(c)));
    out.set_col(static_cast<std::size_t>(c), col);
  }
  return out;
}

}  // namespace

RomWorkspace::RomWorkspace(const FomProblem& problem, const ReducedBasis& basis,
                           Vector reference)
    : problem_(&problem) {
  const auto& layout = problem.layout();
  if (basis.layout_hash != 0 && basis.layout_hash != layout.hash())
    throw InvalidInput("RomWorkspace: basis layout hash does not match the problem");
  phi_ = pod::augment_basis(basis.trial, basis.dbc_basis, layout);
  m_ = basis.trial_dim();
  m_dbc_ = basis.dbc_dim();
  if (reference.empty())
    reference_ = problem.initial_state(0.0);
  else if (reference.size() == layout.total_dofs())
    reference_ = std::move(reference);
  else
    throw DimensionMismatch("RomWorkspace: reference length mismatch");
}

Vector RomWorkspace::reconstruct(const RomState& state) const {
  if (state.coords.size() != m_ || state.dbc_coords.size() != m_dbc_)
    throw DimensionMismatch("reconstruct: coordinate lengths mismatch");
  Vector w = reference_;
  Vector full(m_ + m_dbc_);
  std::copy(state.coords.begin(), state.coords.end(), full.begin());
  std::copy(state.dbc_coords.begin(), state.dbc_coords.end(), full.begin() + static_cast<std::ptrdiff_t>(m_));
  const Vector dw = linalg::matvec(phi_, full);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += dw[i];
  return w;
}

Vector RomWorkspace::dbc_coordinates(double t) const {
  // The DBC block of the extended system is diagonal with blocking modes of
  // disjoint support, so each coordinate solves independently:
  // w^_DBC,i = u_i^T (g(t) - w_ref|_DBC).
  const auto& layout = problem_->layout();
  const Vector g = problem_->dirichlet_values(t);
  Vector coords(m_dbc_, 0.0);
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const auto& block = layout.blocks()[b];
    double s = 0.0;
    for (std::size_t dof : block)
      s += g[layout.dbc_position(dof)] - reference_[dof];
    coords[b] = s / std::sqrt(static_cast<double>(block.size()));
  }
  return coords;
}

StepResult gauss_newton_step(const RomWorkspace& ws, precond::Kind kind, const RomState& state,
                             double t, const GaussNewtonConfig& config) {
  const FomProblem& problem = ws.problem();
  const Vector w = ws.reconstruct(state);
  const Vector rbar = problem.residual(w, t);
  const SparseMatrix jbar = problem.jacobian(w, t);
  const auto m = precond::build(kind, jbar, config.precond_options);

  const DenseMatrix jphi = sparse_times_dense(jbar, ws.augmented_basis());
  const DenseMatrix a = m.apply_to_matrix(jphi);
  const Vector mr = m.apply(rbar);

  const DenseMatrix jhat = linalg::matmul_at_b(a, a);
  Vector rhat = linalg::matvec_t(a, mr);
  for (double& v : rhat) v = -v;

  StepResult out;
  try {
    out.delta_coords = linalg::solve_dense_spd(jhat, rhat);
  } catch (const FactorizationError& e) {
    const auto svd = linalg::thin_svd(jhat);
    throw NonConvergence("gauss_newton_step: rank-deficient reduced Jacobian (sigma_min=" +
                             std::to_string(svd.singular_values.back()) + ")",
                         linalg::norm2(mr));
  }
  out.record.residual_norm = linalg::norm2(mr);
  out.record.raw_residual_norm = linalg::norm2(rbar);
  out.record.step_norm = linalg::norm2(out.delta_coords);
  if (config.record_condition_numbers)
    out.record.condition_number = linalg::condition_number_2norm(jhat);
  return out;
}

Vector projected_increment(const DenseMatrix& phi, const SparseMatrix& j,
                           std::span<const double> r) {
  const linalg::LuFactors lu(j);
  Vector dr = lu.solve(r);
  for (double& v : dr) v = -v;  // delta w = -J^{-1} r
  const DenseMatrix gram = linalg::matmul_at_b(phi, phi);
  const Vector rhs = linalg::matvec_t(phi, dr);
  const Vector y = linalg::solve_dense_spd(gram, rhs);
  return linalg::matvec(phi, y);
}

double theta_norm(const SparseMatrix& j, const precond::BuiltPreconditioner& p,
                  std::span<const double> x) {
  return linalg::norm2(p.apply(j.apply(x)));
}

}  // namespace plrom::lspg
