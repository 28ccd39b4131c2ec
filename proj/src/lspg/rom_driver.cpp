#include <chrono>
#include <cmath>

#include "plrom/lspg/lspg.hpp"

namespace plrom::lspg {

RomRunReport run_lspg(const FomProblem& problem, const ReducedBasis& basis, precond::Kind kind,
                      const ContinuationSchedule& schedule, const GaussNewtonConfig& config) {
  RomWorkspace ws(problem, basis);
  RomRunReport report;
  const std::size_t num_steps = schedule.num_steps();
  report.trajectory.reserve(num_steps);
  report.steps.reserve(num_steps);

  RomState state{Vector(ws.trial_dim(), 0.0), ws.dbc_coordinates(schedule.t_start)};

  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t s = 1; s <= num_steps; ++s) {
    const double t = schedule.time_at(s);
    state.dbc_coords = ws.dbc_coordinates(t);
    StepRecord step;
    step.t = t;
    double initial_norm = -1.0;
    for (std::size_t k = 0; k < config.max_iter; ++k) {
      StepResult result;
      try {
        result = gauss_newton_step(ws, kind, state, t, config);
      } catch (const Error&) {
        break;  // rank deficiency / element inversion: step fails
      }
      if (initial_norm < 0.0) initial_norm = result.record.residual_norm;
      if (result.record.residual_norm <=
          std::max(config.abs_tol, config.rel_tol * initial_norm)) {
        step.converged = true;
        break;
      }
      for (std::size_t i = 0; i < ws.trial_dim(); ++i)
        state.coords[i] += config.step_length * result.delta_coords[i];
      for (std::size_t i = 0; i < ws.dbc_dim(); ++i)
        state.dbc_coords[i] += config.step_length * result.delta_coords[ws.trial_dim() + i];
      result.record.iteration = k + 1;
      step.iterations.push_back(result.record);
      ++report.total_iterations;
      const double coord_norm = std::hypot(linalg::norm2(state.coords),
                                           linalg::norm2(state.dbc_coords));
      if (result.record.step_norm <= config.step_tol * coord_norm) {
        step.converged = true;
        break;
      }
    }
    report.steps.push_back(std::move(step));
    report.trajectory.push_back(state);
    report.reconstructed.push_back(ws.reconstruct(state));
    if (!report.steps.back().converged) {
      report.converged = false;
      break;  // partial trajectory retained
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

double RomRunReport::average_condition_number() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& step : steps)
    for (const auto& rec : step.iterations) {
      sum += rec.condition_number;
      ++n;
    }
  return n == 0 ? 1.0 : sum / static_cast<double>(n);
}

}  // namespace plrom::lspg
