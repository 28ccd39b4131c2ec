#pragma once

#include "plrom/fom/newton.hpp"
#include "plrom/fom/problem.hpp"
#include "plrom/pod/basis.hpp"
#include "plrom/precond/preconditioner.hpp"

namespace plrom::lspg {

using fom::ContinuationSchedule;
using fom::FomProblem;
using linalg::DenseMatrix;
using linalg::SparseMatrix;
using linalg::Vector;
using pod::ReducedBasis;

struct GaussNewtonConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  /// Stall test: a step with ||delta w^|| below step_tol times the
  /// coordinate norm ends the iteration (the residual floor of a truncated
  /// basis is the projection error, which no iterate can cross).
  double step_tol = 1e-8;
  std::size_t max_iter = 20;
  double step_length = 1.0;
  bool record_condition_numbers = true;
  precond::BuildOptions precond_options{};
};

/// Generalized coordinates (free trial part + DBC blocking part) and the
/// reconstruction w~ = w_ref + Phi_Mbar (w^, w^_DBC).
struct RomState {
  Vector coords;      // length M
  Vector dbc_coords;  // length M_DBC
};

struct IterationRecord {
  std::size_t iteration = 0;
  double residual_norm = 0.0;          // ||M rbar||
  double raw_residual_norm = 0.0;      // ||rbar||
  double condition_number = 1.0;       // cond2 of the reduced Jacobian
  double step_norm = 0.0;              // ||delta w^||
};

struct StepRecord {
  double t = 0.0;
  std::vector<IterationRecord> iterations;
  bool converged = false;
};

struct RomRunReport {
  std::vector<RomState> trajectory;       // one per continuation step
  std::vector<Vector> reconstructed;      // full states, one per step
  std::vector<StepRecord> steps;
  std::size_t total_iterations = 0;
  double wall_seconds = 0.0;
  bool converged = true;                  // false if any step failed

  double average_condition_number() const;
};

/// Context holding the augmented basis scatter for a (problem, basis) pair.
class RomWorkspace {
 public:
  /// `reference` defaults to problem.initial_state(0); pass the snapshot
  /// reference when it differs.
  RomWorkspace(const FomProblem& problem, const ReducedBasis& basis, Vector reference = {});

  const DenseMatrix& augmented_basis() const { return phi_; }
  std::size_t trial_dim() const { return m_; }
  std::size_t dbc_dim() const { return m_dbc_; }

  Vector reconstruct(const RomState& state) const;  // w_ref + Phi (w^, w^_DBC)
  /// Solves the decoupled DBC block so the constrained dofs track g(t).
  Vector dbc_coordinates(double t) const;

  const FomProblem& problem() const { return *problem_; }
  const Vector& reference() const { return reference_; }

 private:
  const FomProblem* problem_;
  DenseMatrix phi_;  // total_dofs x (M + M_DBC)
  std::size_t m_ = 0, m_dbc_ = 0;
  Vector reference_;
};

struct StepResult {
  Vector delta_coords;  // length M + M_DBC
  IterationRecord record;
};

/// One Gauss-Newton iterate of the (optionally preconditioned) LSPG
/// minimization: A = M Jbar Phi, solve (A^T A) dw = -A^T (M rbar).
StepResult gauss_newton_step(const RomWorkspace& ws, precond::Kind kind, const RomState& state,
                             double t, const GaussNewtonConfig& config = {});

/// Full continuation-driven ROM run.
RomRunReport run_lspg(const FomProblem& problem, const ReducedBasis& basis, precond::Kind kind,
                      const ContinuationSchedule& schedule, const GaussNewtonConfig& config = {});

/// l2 projection of the full-order increment onto span(Phi):
/// Phi (Phi^T Phi)^{-1} Phi^T (-J^{-1} r).
Vector projected_increment(const DenseMatrix& phi, const SparseMatrix& j,
                           std::span<const double> r);

/// sqrt(x^T Theta x) with Theta = J^T M^T M J, evaluated as ||M (J x)||.
double theta_norm(const SparseMatrix& j, const precond::BuiltPreconditioner& p,
                  std::span<const double> x);

/// Global relative error: sum_i ||w_i - w~_i|| / sum_i ||w_i||.
double error_metric(const std::vector<Vector>& fom_trajectory,
                    const std::vector<Vector>& rom_trajectory);

}  // namespace plrom::lspg
