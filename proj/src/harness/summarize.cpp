#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "plrom/harness/study.hpp"

namespace plrom::harness {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

void summarize(const fs::path& study_dir) {
  const auto cells = read_results_csv(study_dir / "results.csv");

  // Deterministic grid: cases and kinds in first-appearance order, M ascending.
  std::vector<std::string> case_names;
  std::vector<precond::Kind> kinds;
  std::vector<std::size_t> dims;
  std::map<std::tuple<std::string, precond::Kind, std::size_t>, const CellResult*> grid;
  for (const auto& c : cells) {
    push_unique(case_names, c.case_name);
    push_unique(kinds, c.kind);
    push_unique(dims, c.dim);
    grid[{c.case_name, c.kind, c.dim}] = &c;
  }
  std::sort(dims.begin(), dims.end());

  const auto open = [&](const std::string& name, const std::string& header) {
    std::ofstream out(study_dir / name);
    if (!out) throw Error("summarize: cannot write " + (study_dir / name).string());
    out << header << '\n';
    return out;
  };

  auto error_csv = open("summary_error.csv", "case,kind,M,eps");
  auto wall_csv = open("summary_walltime.csv", "case,kind,M,wall_seconds");
  auto cond_csv = open("summary_condition.csv", "case,kind,M,avg_cond");
  auto iters_csv = open("summary_iterations.csv", "case,kind,M,total_nonlinear_iters");
  auto pareto_csv = open("summary_pareto.csv", "case,kind,M,eps,wall_seconds");

  for (const auto& name : case_names) {
    std::vector<ParetoPoint> points;
    for (precond::Kind kind : kinds) {
      for (std::size_t m : dims) {
        const std::string prefix =
            name + "," + precond::to_string(kind) + "," + std::to_string(m) + ",";
        const auto it = grid.find({name, kind, m});
        if (it == grid.end()) {
          // Missing cell: row kept, value left empty.
          error_csv << prefix << '\n';
          wall_csv << prefix << '\n';
          cond_csv << prefix << '\n';
          iters_csv << prefix << '\n';
          continue;
        }
        const CellResult& c = *it->second;
        error_csv << prefix << fmt(c.eps) << '\n';
        wall_csv << prefix << fmt(c.wall_seconds) << '\n';
        cond_csv << prefix << fmt(c.avg_cond) << '\n';
        iters_csv << prefix << c.total_iters << '\n';
        if (c.converged && c.wall_seconds > 0.0)
          points.push_back({precond::to_string(c.kind), c.dim, c.eps, c.wall_seconds});
      }
    }
    if (points.empty()) continue;
    for (const auto& p : pareto_front(points))
      pareto_csv << name << ',' << p.kind << ',' << p.dim << ',' << fmt(p.eps) << ','
                 << fmt(p.wall_seconds) << '\n';
  }
}

}  // namespace plrom::harness
