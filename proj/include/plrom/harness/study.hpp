#pragma once

#include <filesystem>

#include "plrom/fom/mechanical.hpp"
#include "plrom/fom/newton.hpp"
#include "plrom/fom/thermomechanical.hpp"
#include "plrom/harness/lhc.hpp"
#include "plrom/harness/pareto.hpp"
#include "plrom/lspg/lspg.hpp"

namespace plrom::harness {

enum class ProblemKind { Mechanical, ThermoMechanical };

ProblemKind problem_from_string(const std::string& name);  // mechanical|thermomechanical
std::string to_string(ProblemKind kind);

/// Everything a full sweep needs: the base problem, the varied parameter
/// box, the train/test split, and the (kind, M) grid.
struct StudyConfig {
  ProblemKind problem = ProblemKind::Mechanical;

  // Mesh and base material (applied to every block unless varied).
  std::size_t nx = 20, ny = 4;
  double lx = 0.1, ly = 0.02;
  std::size_t num_blocks = 5;
  double youngs = 1.103e11;
  double poisson = 0.32;
  double pressure_rate = 0.0;

  // Thermo-mechanical extras (ignored by the mechanical problem).
  double conductivity = 1.187e3;
  double expansion = 1e-5;
  double initial_temperature = 293.0;
  double temp_rate = 100.0;

  /// Block whose material the sampled parameters override.
  std::size_t varied_block = 2;
  /// Range names: "E_b" (Young's modulus) or "nu_b" (Poisson ratio).
  std::vector<ParamRange> ranges;

  std::size_t num_training = 5;
  std::size_t num_testing = 4;
  /// Re-run the training cases as test cases (reproduction regime).
  bool replay_training = false;

  std::vector<std::size_t> dims;        // ascending basis dimensions
  std::vector<precond::Kind> kinds;

  fom::ContinuationSchedule schedule{0.0, 1.0, 0.05};
  fom::NewtonConfig newton{};
  lspg::GaussNewtonConfig gauss_newton{};
  std::uint64_t seed = 0;

  void validate() const;
};

/// Desk-scale defaults exercising each built-in problem.
StudyConfig mechanical_toy_config();
StudyConfig thermomechanical_toy_config();

/// Instantiate the configured problem with the sampled parameter overrides
/// applied to the varied block. `params` aligns with `config.ranges`.
std::unique_ptr<fom::FomProblem> make_problem(const StudyConfig& config, const Vector& params);

/// One (test case, preconditioner kind, basis dimension) ROM run.
struct CellResult {
  std::string case_name;
  precond::Kind kind = precond::Kind::None;
  std::size_t dim = 0;
  double eps = 0.0;
  double avg_cond = 1.0;
  std::size_t total_iters = 0;
  double wall_seconds = 0.0;
  bool converged = false;
};

struct StudyReport {
  std::filesystem::path dir;
  std::vector<CellResult> cells;
  Vector singular_values;  // pooled-snapshot spectrum
};

/// Full sweep: training FOM runs, pooled-snapshot POD, the (case, kind, M)
/// ROM grid with matching test FOM runs, and all CSV artifacts under
/// out_dir (`results.csv`, `<case>/<kind>/M<dim>/report.json`).
StudyReport run_study(const StudyConfig& config, const std::filesystem::path& out_dir);

/// Rewrite per-figure tables (error, wall time, condition number, nonlinear
/// iterations, Pareto front; one CSV per family per test case) from the
/// results.csv inside a completed study directory.
void summarize(const std::filesystem::path& study_dir);

/// Parse a results.csv produced by run_study.
std::vector<CellResult> read_results_csv(const std::filesystem::path& csv_path);

}  // namespace plrom::harness
