#pragma once

#include "plrom/fom/problem.hpp"
#include "plrom/linalg/solvers.hpp"

namespace plrom::fom {

enum class LineSearch { FullStep, Backtracking };
enum class LinearSolver { Direct, Cg, Gmres };

struct NewtonConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_iter = 30;
  LineSearch line_search = LineSearch::Backtracking;
  double shrink = 0.5;
  double min_step = 1e-4;
  LinearSolver linear_solver = LinearSolver::Direct;
  double krylov_tol = 1e-10;
  std::size_t krylov_max_iter = 5000;
};

struct NewtonResult {
  Vector state;
  std::size_t iterations = 0;
};

/// Globalized Newton on the extended system. The DBC entries of the guess
/// are overwritten with g(t) before iterating, so constrained rows carry a
/// zero residual and a zero update throughout.
NewtonResult newton_solve(const FomProblem& problem, double t, std::span<const double> guess,
                          const NewtonConfig& config = {});

struct ContinuationSchedule {
  double t_start = 0.0;
  double t_end = 1.0;
  double step = 0.05;

  std::size_t num_steps() const;
  double time_at(std::size_t step_index) const;  // 1-based end of step
};

/// One converged state per step; the previous state seeds the next solve.
std::vector<Vector> run_continuation(const FomProblem& problem,
                                     const ContinuationSchedule& schedule,
                                     const NewtonConfig& config = {});

}  // namespace plrom::fom
