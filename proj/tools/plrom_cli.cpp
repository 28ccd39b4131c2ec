#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "plrom/harness/study.hpp"
#include "plrom/pod/basis_io.hpp"

namespace {

using namespace plrom;
using harness::StudyConfig;
namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (!parts.empty() && parts.back().empty()) parts.pop_back();
  return parts;
}

StudyConfig load_config(const std::string& path) {
  nlohmann::json j;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    j = nlohmann::json::parse(in);
  }
  StudyConfig c = j.value("problem", "mechanical") == "thermomechanical"
                      ? harness::thermomechanical_toy_config()
                      : harness::mechanical_toy_config();
  c.nx = j.value("nx", c.nx);
  c.ny = j.value("ny", c.ny);
  c.lx = j.value("lx", c.lx);
  c.ly = j.value("ly", c.ly);
  c.num_blocks = j.value("num_blocks", c.num_blocks);
  c.youngs = j.value("youngs", c.youngs);
  c.poisson = j.value("poisson", c.poisson);
  c.pressure_rate = j.value("pressure_rate", c.pressure_rate);
  c.conductivity = j.value("conductivity", c.conductivity);
  c.expansion = j.value("expansion", c.expansion);
  c.initial_temperature = j.value("initial_temperature", c.initial_temperature);
  c.temp_rate = j.value("temp_rate", c.temp_rate);
  c.varied_block = j.value("varied_block", c.varied_block);
  if (j.contains("ranges")) {
    c.ranges.clear();
    for (const auto& r : j.at("ranges"))
      c.ranges.push_back({r.at("name").get<std::string>(), r.at("lo").get<double>(),
                          r.at("hi").get<double>()});
  }
  c.num_training = j.value("num_training", c.num_training);
  c.num_testing = j.value("num_testing", c.num_testing);
  c.replay_training = j.value("replay_training", c.replay_training);
  if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<std::size_t>>();
  if (j.contains("kinds")) {
    c.kinds.clear();
    for (const auto& k : j.at("kinds"))
      c.kinds.push_back(precond::kind_from_string(k.get<std::string>()));
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    c.schedule.t_start = s.value("t_start", c.schedule.t_start);
    c.schedule.t_end = s.value("t_end", c.schedule.t_end);
    c.schedule.step = s.value("step", c.schedule.step);
  }
  if (j.contains("newton")) {
    const auto& n = j.at("newton");
    c.newton.abs_tol = n.value("abs_tol", c.newton.abs_tol);
    c.newton.rel_tol = n.value("rel_tol", c.newton.rel_tol);
    c.newton.max_iter = n.value("max_iter", c.newton.max_iter);
  }
  if (j.contains("gauss_newton")) {
    const auto& g = j.at("gauss_newton");
    c.gauss_newton.abs_tol = g.value("abs_tol", c.gauss_newton.abs_tol);
    c.gauss_newton.rel_tol = g.value("rel_tol", c.gauss_newton.rel_tol);
    c.gauss_newton.step_tol = g.value("step_tol", c.gauss_newton.step_tol);
    c.gauss_newton.max_iter = g.value("max_iter", c.gauss_newton.max_iter);
  }
  c.seed = j.value("seed", c.seed);
  return c;
}

linalg::Vector case_params(const StudyConfig& config, const std::string& params_arg) {
  linalg::Vector p;
  if (params_arg.empty()) {
    for (const auto& r : config.ranges) p.push_back(0.5 * (r.lo + r.hi));
  } else {
    for (const auto& s : split(params_arg, ',')) p.push_back(std::stod(s));
    if (p.size() != config.ranges.size())
      throw InvalidInput("--params must list one value per configured range");
  }
  return p;
}

void apply_overrides(StudyConfig& config, const std::string& kinds_arg,
                     const std::string& dims_arg, bool seed_set, std::uint64_t seed) {
  if (!kinds_arg.empty()) {
    config.kinds.clear();
    for (const auto& k : split(kinds_arg, ',')) config.kinds.push_back(precond::kind_from_string(k));
  }
  if (!dims_arg.empty()) {
    config.dims.clear();
    for (const auto& d : split(dims_arg, ',')) config.dims.push_back(std::stoul(d));
  }
  if (seed_set) config.seed = seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preconditioned LSPG model-reduction workflow"};
  app.require_subcommand(1);

  std::string config_path, out, params_arg, kinds_arg, dims_arg;
  std::string snapshots_stem, basis_stem, kind_name = "none", study_dir;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--params", params_arg,
                    "comma list of varied-parameter values (default: range midpoints)");
  };

  auto* cmd_fom = app.add_subcommand("fom", "run a training FOM sweep, emit snapshots");
  add_config(cmd_fom);
  cmd_fom->add_option("--out", out, "output stem for <stem>.snap.mtx")->required();

  auto* cmd_basis = app.add_subcommand("basis", "POD basis from saved snapshots");
  cmd_basis->add_option("--snapshots", snapshots_stem, "snapshot stem")->required();
  cmd_basis->add_option("--dim", dim, "basis dimension")->required();
  cmd_basis->add_option("--out", out, "output stem")->required();

  auto* cmd_rom = app.add_subcommand("rom", "single preconditioned ROM run");
  add_config(cmd_rom);
  cmd_rom->add_option("--basis", basis_stem, "basis stem")->required();
  cmd_rom->add_option("--kind", kind_name, "none|jacobi|gs|sgs|ilu1|ideal");
  cmd_rom->add_option("--out", out, "output directory")->required();

  auto* cmd_study = app.add_subcommand("study", "full train/test parameter study");
  cmd_study->add_option("--config", config_path, "JSON config file");
  cmd_study->add_option("--out", out, "study directory")->required();
  cmd_study->add_option("--kinds", kinds_arg, "comma list overriding config kinds");
  cmd_study->add_option("--dims", dims_arg, "comma list overriding config dims");
  cmd_study->add_option("--seed", seed, "sampling seed")->each([&](const std::string&) {
    seed_set = true;
  });

  auto* cmd_summarize = app.add_subcommand("summarize", "rebuild per-figure tables");
  cmd_summarize->add_option("--study", study_dir, "study directory")->required();

  auto* cmd_pareto = app.add_subcommand("pareto", "print per-case Pareto fronts");
  cmd_pareto->add_option("--study", study_dir, "study directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_fom->parsed()) {
      const StudyConfig config = load_config(config_path);
      const auto problem = harness::make_problem(config, case_params(config, params_arg));
      const auto states = fom::run_continuation(*problem, config.schedule, config.newton);
      std::vector<std::string> labels;
      for (std::size_t s = 1; s <= states.size(); ++s)
        labels.push_back("t=" + std::to_string(config.schedule.time_at(s)));
      const auto set = pod::assemble_snapshots(
          states, problem->layout(), problem->initial_state(config.schedule.t_start),
          std::move(labels));
      pod::save_snapshot_matrix(out, set);
    } else if (cmd_basis->parsed()) {
      const auto set = pod::load_snapshot_matrix(snapshots_stem);
      pod::save_basis(out, pod::compute_pod_basis(set, dim));
    } else if (cmd_rom->parsed()) {
      const StudyConfig config = load_config(config_path);
      const auto problem = harness::make_problem(config, case_params(config, params_arg));
      const auto basis = pod::load_basis(basis_stem, problem->layout().hash());
      const auto kind = precond::kind_from_string(kind_name);
      const auto rom =
          lspg::run_lspg(*problem, basis, kind, config.schedule, config.gauss_newton);
      const auto fom_states = fom::run_continuation(*problem, config.schedule, config.newton);
      fs::create_directories(out);
      std::ofstream csv(fs::path(out) / "results.csv");
      csv << "case,kind,M,eps,avg_cond,total_nonlinear_iters,wall_seconds,converged\n";
      char row[512];
      std::snprintf(row, sizeof(row), "case0,%s,%zu,%.17g,%.17g,%zu,%.17g,%d\n",
                    precond::to_string(kind).c_str(), basis.trial_dim(),
                    lspg::error_metric(fom_states, rom.reconstructed),
                    rom.average_condition_number(), rom.total_iterations, rom.wall_seconds,
                    rom.converged ? 1 : 0);
      csv << row;
    } else if (cmd_study->parsed()) {
      StudyConfig config = load_config(config_path);
      apply_overrides(config, kinds_arg, dims_arg, seed_set, seed);
      harness::run_study(config, out);
    } else if (cmd_summarize->parsed()) {
      harness::summarize(study_dir);
    } else if (cmd_pareto->parsed()) {
      const auto cells = harness::read_results_csv(fs::path(study_dir) / "results.csv");
      std::vector<std::string> case_names;
      for (const auto& c : cells)
        if (std::find(case_names.begin(), case_names.end(), c.case_name) == case_names.end())
          case_names.push_back(c.case_name);
      std::cout << "case,kind,M,eps,wall_seconds\n";
      for (const auto& name : case_names) {
        std::vector<harness::ParetoPoint> points;
        for (const auto& c : cells)
          if (c.case_name == name && c.converged && c.wall_seconds > 0.0)
            points.push_back({precond::to_string(c.kind), c.dim, c.eps, c.wall_seconds});
        if (points.empty()) continue;
        for (const auto& p : harness::pareto_front(points))
          std::cout << name << ',' << p.kind << ',' << p.dim << ',' << p.eps << ','
                    << p.wall_seconds << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
