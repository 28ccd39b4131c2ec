#include "plrom/fom/newton.hpp"

#include <cmath>

namespace plrom::fom {

Vector FomProblem::residual(std::span<const double> state, double t) const {
  if (state.size() != num_dofs()) throw DimensionMismatch("residual: state length mismatch");
  Vector r = assembled_residual(state, t);
  const Vector g = dirichlet_values(t);
  const auto& lay = layout();
  for (std::size_t k = 0; k < lay.num_dbc(); ++k) r[lay.dbc_dofs()[k]] = state[lay.dbc_dofs()[k]] - g[k];
  return r;
}

SparseMatrix FomProblem::jacobian(std::span<const double> state, double t,
                                  bool zero_dbc_columns) const {
  if (state.size() != num_dofs()) throw DimensionMismatch("jacobian: state length mismatch");
  const SparseMatrix raw = assembled_jacobian(state, t);
  const auto& lay = layout();
  std::vector<std::size_t> ri, ci;
  std::vector<double> v;
  ri.reserve(raw.nnz());
  ci.reserve(raw.nnz());
  v.reserve(raw.nnz());
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    if (lay.is_dbc(i)) continue;
    for (std::size_t p = raw.offsets()[i]; p < raw.offsets()[i + 1]; ++p) {
      const std::size_t j = raw.col_idx()[p];
      if (zero_dbc_columns && lay.is_dbc(j)) continue;
      ri.push_back(i);
      ci.push_back(j);
      v.push_back(raw.values()[p]);
    }
  }
  for (std::size_t dof : lay.dbc_dofs()) {
    ri.push_back(dof);
    ci.push_back(dof);
    v.push_back(1.0);
  }
  return SparseMatrix::from_triplets(num_dofs(), num_dofs(), ri, ci, v);
}

Vector FomProblem::initial_state(double t) const {
  Vector w(num_dofs(), 0.0);
  const Vector g = dirichlet_values(t);
  const auto& lay = layout();
  for (std::size_t k = 0; k < lay.num_dbc(); ++k) w[lay.dbc_dofs()[k]] = g[k];
  return w;
}

namespace {

Vector solve_linear(const SparseMatrix& j, const Vector& rhs, const NewtonConfig& cfg) {
  switch (cfg.linear_solver) {
    case LinearSolver::Direct:
      return linalg::lu_factor(j).solve(rhs);
    case LinearSolver::Cg: {
      auto res = linalg::solve_iterative(j, rhs, linalg::KrylovMethod::Cg, cfg.krylov_tol,
                                         cfg.krylov_max_iter);
      if (!res.converged) throw NonConvergence("newton: cg did not converge", 0.0);
      return res.x;
    }
    case LinearSolver::Gmres: {
      auto res = linalg::solve_iterative(j, rhs, linalg::KrylovMethod::Gmres, cfg.krylov_tol,
                                         cfg.krylov_max_iter);
      if (!res.converged) throw NonConvergence("newton: gmres did not converge", 0.0);
      return res.x;
    }
  }
  throw InvalidInput("newton: unknown linear solver");
}

}  // namespace

NewtonResult newton_solve(const FomProblem& problem, double t, std::span<const double> guess,
                          const NewtonConfig& config) {
  if (config.abs_tol <= 0.0 || config.rel_tol <= 0.0 || config.shrink <= 0.0 ||
      config.shrink >= 1.0)
    throw InvalidInput("newton: bad configuration");
  const auto& lay = problem.layout();
  Vector w(guess.begin(), guess.end());
  const Vector g = problem.dirichlet_values(t);
  for (std::size_t k = 0; k < lay.num_dbc(); ++k) w[lay.dbc_dofs()[k]] = g[k];

  Vector r = problem.residual(w, t);
  const double r0 = linalg::norm2(r);
  double rnorm = r0;
  const auto converged = [&](double rn) {
    return rn <= config.abs_tol || rn <= config.rel_tol * r0;
  };

  std::size_t it = 0;
  while (!converged(rnorm)) {
    if (it >= config.max_iter)
      throw NonConvergence("newton: max iterations exceeded", rnorm);
    const SparseMatrix j = problem.jacobian(w, t);
    Vector rhs(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
    const Vector dw = solve_linear(j, rhs, config);

    double alpha = 1.0;
    Vector w_trial(w.size());
    while (true) {
      for (std::size_t i = 0; i < w.size(); ++i) w_trial[i] = w[i] + alpha * dw[i];
      bool ok = true;
      Vector r_trial;
      try {
        r_trial = problem.residual(w_trial, t);
      } catch (const ElementInversion&) {
        ok = false;
      }
      const double rn = ok ? linalg::norm2(r_trial) : 0.0;
      if (ok && (config.line_search == LineSearch::FullStep || rn < rnorm || converged(rn))) {
        w.swap(w_trial);
        r = std::move(r_trial);
        rnorm = rn;
        break;
      }
      alpha *= config.shrink;
      if (alpha < config.min_step) {
        if (!ok) throw ElementInversion("newton: element inversion at minimum step length");
        // accept the short step even without decrease
        w.swap(w_trial);
        r = std::move(r_trial);
        rnorm = rn;
        break;
      }
    }
    ++it;
  }
  return {std::move(w), it};
}

std::size_t ContinuationSchedule::num_steps() const {
  if (step <= 0.0) throw InvalidInput("ContinuationSchedule: step must be positive");
  const double raw = (t_end - t_start) / step;
  const auto n = static_cast<std::size_t>(std::llround(raw));
  if (n == 0 || std::abs(raw - static_cast<double>(n)) > 1e-9 * std::max(1.0, raw))
    throw InvalidInput("ContinuationSchedule: span is not a whole number of steps");
  return n;
}

double ContinuationSchedule::time_at(std::size_t step_index) const {
  return t_start + step * static_cast<double>(step_index);
}

std::vector<Vector> run_continuation(const FomProblem& problem,
                                     const ContinuationSchedule& schedule,
                                     const NewtonConfig& config) {
  const std::size_t n = schedule.num_steps();
  std::vector<Vector> states;
  states.reserve(n);
  Vector w = problem.initial_state(schedule.t_start);
  for (std::size_t s = 1; s <= n; ++s) {
    const double t = schedule.time_at(s);
    try {
      auto result = newton_solve(problem, t, w, config);
      w = std::move(result.state);
    } catch (const NonConvergence& e) {
      throw NonConvergence("continuation: step at t=" + std::to_string(t) +
                               " did not converge",
                           e.final_residual);
    }
    states.push_back(w);
  }
  return states;
}

}  // namespace plrom::fom
