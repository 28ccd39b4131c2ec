#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "plrom/harness/study.hpp"
#include "plrom/pod/basis_io.hpp"

namespace plrom::harness {

namespace fs = std::filesystem;

ProblemKind problem_from_string(const std::string& name) {
  if (name == "mechanical") return ProblemKind::Mechanical;
  if (name == "thermomechanical") return ProblemKind::ThermoMechanical;
  throw InvalidInput("unknown problem kind: " + name);
}

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::Mechanical ? "mechanical" : "thermomechanical";
}

void StudyConfig::validate() const {
  if (num_blocks == 0 || varied_block >= num_blocks)
    throw InvalidInput("StudyConfig: varied_block out of range");
  for (const auto& r : ranges) {
    if (!(r.lo < r.hi)) throw InvalidInput("StudyConfig: degenerate range for " + r.name);
    if (r.name != "E_b" && r.name != "nu_b")
      throw InvalidInput("StudyConfig: unknown varied parameter " + r.name);
  }
  if (num_training == 0) throw InvalidInput("StudyConfig: need at least one training case");
  if (num_testing == 0 && !replay_training)
    throw InvalidInput("StudyConfig: no test cases requested");
  if (dims.empty()) throw InvalidInput("StudyConfig: empty basis-dimension sweep");
  if (!std::is_sorted(dims.begin(), dims.end()) || dims.front() == 0)
    throw InvalidInput("StudyConfig: dims must be ascending and positive");
  if (kinds.empty()) throw InvalidInput("StudyConfig: empty preconditioner list");
  schedule.num_steps();  // throws on a non-integral step count
}

StudyConfig mechanical_toy_config() {
  StudyConfig c;
  c.problem = ProblemKind::Mechanical;
  c.nx = 20;
  c.ny = 4;
  c.lx = 0.1;
  c.ly = 0.02;
  c.num_blocks = 5;
  c.youngs = 1.103e11;
  c.poisson = 0.32;
  c.pressure_rate = 1e7;
  c.varied_block = 2;
  c.ranges = {{"E_b", 1.27725e11, 2.12875e11}, {"nu_b", 0.24, 0.4}};
  c.dims = {2, 5, 10};
  c.kinds = {precond::Kind::None, precond::Kind::Jacobi, precond::Kind::Ideal};
  c.schedule = {0.0, 1.0, 0.05};
  return c;
}

StudyConfig thermomechanical_toy_config() {
  StudyConfig c;
  c.problem = ProblemKind::ThermoMechanical;
  c.nx = 16;
  c.ny = 4;
  c.lx = 0.016;
  c.ly = 0.004;
  c.num_blocks = 4;
  c.youngs = 1.103e9;
  c.poisson = 0.32;
  c.pressure_rate = 0.0;
  c.conductivity = 1.187e3;
  c.expansion = 1e-5;
  c.initial_temperature = 293.0;
  c.temp_rate = 100.0;
  c.varied_block = 2;
  c.ranges = {{"E_b", 1.27725e9, 2.12875e9}, {"nu_b", 0.24, 0.4}};
  c.dims = {2, 5, 10};
  c.kinds = {precond::Kind::None, precond::Kind::Jacobi, precond::Kind::Ideal};
  c.schedule = {0.0, 1.0, 0.05};
  return c;
}

std::unique_ptr<fom::FomProblem> make_problem(const StudyConfig& config, const Vector& params) {
  if (params.size() != config.ranges.size())
    throw DimensionMismatch("make_problem: parameter count mismatch");
  double e_b = config.youngs;
  double nu_b = config.poisson;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (config.ranges[i].name == "E_b") e_b = params[i];
    if (config.ranges[i].name == "nu_b") nu_b = params[i];
  }
  fom::QuadMesh mesh(config.nx, config.ny, config.lx, config.ly, config.num_blocks);
  if (config.problem == ProblemKind::Mechanical) {
    std::vector<fom::MechanicalMaterial> mats(config.num_blocks,
                                              {config.youngs, config.poisson});
    mats[config.varied_block] = {e_b, nu_b};
    return std::make_unique<fom::MechanicalProblem>(std::move(mesh), std::move(mats),
                                                    config.pressure_rate);
  }
  std::vector<fom::ThermoMechanicalMaterial> mats(
      config.num_blocks, {config.youngs, config.poisson, config.conductivity, config.expansion,
                          config.initial_temperature});
  mats[config.varied_block].youngs = e_b;
  mats[config.varied_block].poisson = nu_b;
  return std::make_unique<fom::ThermoMechanicalProblem>(std::move(mesh), std::move(mats),
                                                        config.initial_temperature,
                                                        config.temp_rate, config.pressure_rate);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_cell_report(const fs::path& dir, const CellResult& cell,
                       const lspg::RomRunReport& report) {
  fs::create_directories(dir);
  nlohmann::json j;
  j["case"] = cell.case_name;
  j["kind"] = precond::to_string(cell.kind);
  j["dim"] = cell.dim;
  j["eps"] = cell.eps;
  j["avg_cond"] = cell.avg_cond;
  j["total_nonlinear_iters"] = cell.total_iters;
  j["wall_seconds"] = cell.wall_seconds;
  j["converged"] = cell.converged;
  j["steps"] = nlohmann::json::array();
  for (const auto& step : report.steps) {
    nlohmann::json js;
    js["t"] = step.t;
    js["converged"] = step.converged;
    js["iterations"] = nlohmann::json::array();
    for (const auto& rec : step.iterations) {
      js["iterations"].push_back({{"iteration", rec.iteration},
                                  {"residual_norm", rec.residual_norm},
                                  {"raw_residual_norm", rec.raw_residual_norm},
                                  {"condition_number", rec.condition_number},
                                  {"step_norm", rec.step_norm}});
    }
    j["steps"].push_back(std::move(js));
  }
  std::ofstream out(dir / "report.json");
  if (!out) throw Error("run_study: cannot write " + (dir / "report.json").string());
  out << j.dump(2) << '\n';
}

std::string csv_row(const CellResult& c) {
  return c.case_name + "," + precond::to_string(c.kind) + "," + std::to_string(c.dim) + "," +
         fmt(c.eps) + "," + fmt(c.avg_cond) + "," + std::to_string(c.total_iters) + "," +
         fmt(c.wall_seconds) + "," + (c.converged ? "1" : "0");
}

}  // namespace

StudyReport run_study(const StudyConfig& config, const fs::path& out_dir) {
  config.validate();
  fs::create_directories(out_dir);

  const std::size_t n_cases = config.num_training + config.num_testing;
  std::vector<Vector> samples;
  if (config.ranges.empty())
    samples.assign(n_cases, Vector{});
  else
    samples = lhc_sample(config.ranges, n_cases, config.seed);

  // Training sweep: pooled snapshots over every training trajectory.
  std::vector<Vector> pooled;
  const auto reference_problem = make_problem(config, samples.front());
  const fom::DofLayout& layout = reference_problem->layout();
  const Vector reference = reference_problem->initial_state(config.schedule.t_start);
  for (std::size_t c = 0; c < config.num_training; ++c) {
    const auto problem = make_problem(config, samples[c]);
    const auto states = fom::run_continuation(*problem, config.schedule, config.newton);
    pooled.insert(pooled.end(), states.begin(), states.end());
  }
  const pod::SnapshotSet snapshots = pod::assemble_snapshots(pooled, layout, reference);

  std::vector<std::pair<std::size_t, pod::ReducedBasis>> bases;
  for (std::size_t m : config.dims) {
    if (m > snapshots.free_snapshots.cols())
      throw InvalidInput("run_study: basis dimension exceeds the snapshot count");
    bases.emplace_back(m, pod::compute_pod_basis(snapshots, m));
    pod::save_basis(out_dir / ("basis_M" + std::to_string(m)), bases.back().second);
  }

  StudyReport report;
  report.dir = out_dir;
  report.singular_values = bases.front().second.singular_values;

  struct TestCase {
    std::string name;
    std::size_t sample;
  };
  std::vector<TestCase> cases;
  if (config.replay_training)
    for (std::size_t c = 0; c < config.num_training; ++c)
      cases.push_back({"train" + std::to_string(c), c});
  for (std::size_t c = 0; c < config.num_testing; ++c)
    cases.push_back({"test" + std::to_string(c), config.num_training + c});

  std::ofstream csv(out_dir / "results.csv");
  if (!csv) throw Error("run_study: cannot write " + (out_dir / "results.csv").string());
  csv << "case,kind,M,eps,avg_cond,total_nonlinear_iters,wall_seconds,converged\n";

  for (const auto& tc : cases) {
    const auto problem = make_problem(config, samples[tc.sample]);
    const auto fom_states = fom::run_continuation(*problem, config.schedule, config.newton);
    for (precond::Kind kind : config.kinds) {
      for (const auto& [m, basis] : bases) {
        CellResult cell;
        cell.case_name = tc.name;
        cell.kind = kind;
        cell.dim = m;
        lspg::RomRunReport rom;
        try {
          rom = lspg::run_lspg(*problem, basis, kind, config.schedule, config.gauss_newton);
          cell.eps = lspg::error_metric(fom_states, rom.reconstructed);
          cell.avg_cond = rom.average_condition_number();
          cell.total_iters = rom.total_iterations;
          cell.wall_seconds = rom.wall_seconds;
          cell.converged = rom.converged;
        } catch (const Error&) {
          cell.eps = 1.0;  // nothing usable recovered; full-magnitude error
          cell.converged = false;
        }
        write_cell_report(out_dir / tc.name / precond::to_string(kind) /
                              ("M" + std::to_string(m)),
                          cell, rom);
        csv << csv_row(cell) << '\n';
        report.cells.push_back(std::move(cell));
      }
    }
  }
  csv.close();
  summarize(out_dir);
  return report;
}

std::vector<CellResult> read_results_csv(const fs::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("read_results_csv: cannot open " + csv_path.string());
  std::vector<CellResult> cells;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 8) throw InvalidInput("read_results_csv: malformed row: " + line);
    CellResult c;
    c.case_name = fields[0];
    c.kind = precond::kind_from_string(fields[1]);
    c.dim = std::stoul(fields[2]);
    c.eps = std::stod(fields[3]);
    c.avg_cond = std::stod(fields[4]);
    c.total_iters = std::stoul(fields[5]);
    c.wall_seconds = std::stod(fields[6]);
    c.converged = fields[7] == "1";
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace plrom::harness
