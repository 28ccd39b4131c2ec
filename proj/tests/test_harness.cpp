#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "common.hpp"
#include "plrom/harness/study.hpp"

using namespace plrom;
using namespace plrom::harness;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Strip the wall-time field (column 6) from a results.csv row.
std::string drop_wall_column(const std::string& row) {
  std::vector<std::string> f;
  std::stringstream ss(row);
  std::string part;
  while (std::getline(ss, part, ',')) f.push_back(part);
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == 6) continue;
    out += f[i];
    out += ',';
  }
  return out;
}

StudyConfig tiny_mech_config() {
  StudyConfig c = mechanical_toy_config();
  c.num_training = 2;
  c.num_testing = 1;
  c.dims = {2, 4};
  c.kinds = {precond::Kind::Jacobi, precond::Kind::Ideal};
  c.schedule = {0.0, 1.0, 0.2};
  c.nx = 8;
  c.ny = 2;
  return c;
}

}  // namespace

TEST_CASE("lhc_sample single point stays inside the box") {
  const auto s = lhc_sample({{"a", 2.0, 3.0}}, 1, 7);
  REQUIRE(s.size() == 1);
  CHECK(s[0][0] >= 2.0);
  CHECK(s[0][0] < 3.0);
}

TEST_CASE("lhc_sample 1D stratification") {
  const auto s = lhc_sample({{"a", 0.0, 4.0}}, 4, 11);
  std::vector<bool> occupied(4, false);
  for (const auto& p : s) {
    const auto stratum = static_cast<std::size_t>(p[0]);
    REQUIRE(stratum < 4);
    CHECK(!occupied[stratum]);
    occupied[stratum] = true;
  }
}

TEST_CASE("lhc_sample histogram oracle per dimension") {
  const std::vector<ParamRange> ranges{{"a", -1.0, 1.0}, {"b", 10.0, 20.0}, {"c", 0.0, 1.0}};
  for (std::uint64_t seed : {0ULL, 5ULL, 99ULL}) {
    const auto s = lhc_sample(ranges, 5, seed);
    REQUIRE(s.size() == 5);
    for (std::size_t d = 0; d < 3; ++d) {
      std::vector<std::size_t> hist(5, 0);
      for (const auto& p : s) {
        const double u = (p[d] - ranges[d].lo) / (ranges[d].hi - ranges[d].lo);
        hist[static_cast<std::size_t>(u * 5.0)] += 1;
      }
      for (std::size_t k = 0; k < 5; ++k) CHECK(hist[k] == 1);
    }
  }
}

TEST_CASE("lhc_sample determinism and validation") {
  const std::vector<ParamRange> ranges{{"a", 0.0, 1.0}, {"b", -2.0, 2.0}};
  CHECK(lhc_sample(ranges, 6, 42) == lhc_sample(ranges, 6, 42));
  CHECK(lhc_sample(ranges, 6, 42) != lhc_sample(ranges, 6, 43));
  CHECK_THROWS_AS(lhc_sample({{"bad", 1.0, 1.0}}, 3, 0), InvalidInput);
  CHECK_THROWS_AS(lhc_sample(ranges, 0, 0), InvalidInput);
}

TEST_CASE("pareto_front trivial cases") {
  const std::vector<ParetoPoint> one{{"jacobi", 3, 1e-3, 1.0}};
  const auto f1 = pareto_front(one);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].kind == "jacobi");

  const std::vector<ParetoPoint> two{{"a", 1, 1e-3, 1.0}, {"b", 2, 1e-2, 2.0}};
  const auto f2 = pareto_front(two);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].kind == "a");

  CHECK_THROWS_AS(pareto_front({}), InvalidInput);
  CHECK_THROWS_AS(pareto_front({{"x", 1, -1.0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(pareto_front({{"x", 1, 1.0, 0.0}}), InvalidInput);
}

TEST_CASE("pareto_front matches the brute-force domination oracle") {
  std::vector<ParetoPoint> points;
  const auto eps = test::random_vector(20, 900);
  const auto wall = test::random_vector(20, 901);
  for (std::size_t i = 0; i < 20; ++i)
    points.push_back({"k" + std::to_string(i % 3), i, std::abs(eps[i]), std::abs(wall[i]) + 0.1});

  const auto front = pareto_front(points);
  // O(n^2) oracle
  std::vector<ParetoPoint> oracle;
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& q : points)
      if (q.eps <= p.eps && q.wall_seconds <= p.wall_seconds &&
          (q.eps < p.eps || q.wall_seconds < p.wall_seconds))
        dominated = true;
    if (!dominated) oracle.push_back(p);
  }
  REQUIRE(front.size() == oracle.size());
  CHECK(std::is_sorted(front.begin(), front.end(), [](const auto& a, const auto& b) {
    return a.wall_seconds < b.wall_seconds;
  }));
  for (const auto& p : front) {
    // subset of input, mutually non-dominated
    CHECK(std::any_of(points.begin(), points.end(), [&](const auto& q) {
      return q.dim == p.dim && q.eps == p.eps && q.wall_seconds == p.wall_seconds;
    }));
    for (const auto& q : front)
      CHECK(!(q.eps < p.eps && q.wall_seconds < p.wall_seconds));
  }
}

TEST_CASE("study config validation") {
  StudyConfig c = tiny_mech_config();
  CHECK_NOTHROW(c.validate());
  c.dims = {4, 2};
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = tiny_mech_config();
  c.kinds.clear();
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = tiny_mech_config();
  c.ranges[0].hi = c.ranges[0].lo;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = tiny_mech_config();
  c.varied_block = c.num_blocks;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("make_problem applies sampled parameters to the varied block") {
  StudyConfig c = tiny_mech_config();
  const Vector params{1.5e11, 0.3};
  const auto problem = make_problem(c, params);
  const std::string b = std::to_string(c.varied_block);
  CHECK(problem->parameters().at("E_" + b) == 1.5e11);
  CHECK(problem->parameters().at("nu_" + b) == 0.3);
  CHECK(problem->parameters().at("E_0") == c.youngs);
  CHECK_THROWS_AS(make_problem(c, Vector{1.0}), DimensionMismatch);
}

TEST_CASE("run_study replay regime reaches snapshot accuracy") {
  StudyConfig c = tiny_mech_config();
  c.num_training = 1;
  c.num_testing = 0;
  c.replay_training = true;
  c.dims = {5};  // full basis: 1 case x 5 steps
  c.kinds = {precond::Kind::Ideal};
  const auto dir = fs::temp_directory_path() / "plrom_study_replay";
  fs::remove_all(dir);
  const auto report = run_study(c, dir);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].converged);
  CHECK(report.cells[0].eps <= 1e-8);
  fs::remove_all(dir);
}

TEST_CASE("run_study writes one row per cell and summarize re-aggregates it") {
  const StudyConfig c = tiny_mech_config();
  const auto dir = fs::temp_directory_path() / "plrom_study_grid";
  fs::remove_all(dir);
  const auto report = run_study(c, dir);
  // 1 test case x 2 kinds x 2 dims
  REQUIRE(report.cells.size() == 4);

  const auto cells = read_results_csv(dir / "results.csv");
  REQUIRE(cells.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(cells[i].case_name == report.cells[i].case_name);
    CHECK(cells[i].kind == report.cells[i].kind);
    CHECK(cells[i].dim == report.cells[i].dim);
    CHECK(cells[i].eps == report.cells[i].eps);
    CHECK(cells[i].total_iters == report.cells[i].total_iters);
  }

  // every (case, kind, M) cell appears exactly once in each summary table
  for (const char* name : {"summary_error.csv", "summary_walltime.csv",
                           "summary_condition.csv", "summary_iterations.csv"}) {
    const auto lines = read_lines(dir / name);
    REQUIRE(lines.size() == 5);  // header + 4 rows
    for (const auto& cell : cells) {
      const std::string prefix = cell.case_name + "," + precond::to_string(cell.kind) + "," +
                                 std::to_string(cell.dim) + ",";
      std::size_t hits = 0;
      for (const auto& line : lines)
        if (line.rfind(prefix, 0) == 0) ++hits;
      CHECK(hits == 1);
    }
  }

  // avg_cond re-aggregation oracle: recompute the mean from the raw logs
  for (const auto& cell : cells) {
    const auto log_path = dir / cell.case_name / precond::to_string(cell.kind) /
                          ("M" + std::to_string(cell.dim)) / "report.json";
    std::ifstream in(log_path);
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& step : j.at("steps"))
      for (const auto& rec : step.at("iterations")) {
        sum += rec.at("condition_number").get<double>();
        ++n;
      }
    REQUIRE(n > 0);
    CHECK(cell.avg_cond == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-12));
  }

  // pareto summary is a subset of the case's cells
  const auto pareto_lines = read_lines(dir / "summary_pareto.csv");
  CHECK(pareto_lines.size() >= 2);
  fs::remove_all(dir);
}

TEST_CASE("summarize on an empty study emits header-only tables") {
  const auto dir = fs::temp_directory_path() / "plrom_study_empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "results.csv")
      << "case,kind,M,eps,avg_cond,total_nonlinear_iters,wall_seconds,converged\n";
  summarize(dir);
  for (const char* name : {"summary_error.csv", "summary_walltime.csv",
                           "summary_condition.csv", "summary_iterations.csv",
                           "summary_pareto.csv"})
    CHECK(read_lines(dir / name).size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("summarize leaves missing grid cells empty") {
  const auto dir = fs::temp_directory_path() / "plrom_study_missing";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "results.csv")
      << "case,kind,M,eps,avg_cond,total_nonlinear_iters,wall_seconds,converged\n"
      << "test0,jacobi,2,0.5,10,4,0.1,1\n"
      << "test0,jacobi,4,0.25,12,4,0.1,1\n"
      << "test0,ideal,4,0.01,1,2,0.2,1\n";  // (ideal, 2) missing
  summarize(dir);
  const auto lines = read_lines(dir / "summary_error.csv");
  REQUIRE(lines.size() == 5);  // header + full 2x2 grid
  bool found_empty = false;
  for (const auto& line : lines)
    if (line == "test0,ideal,2,") found_empty = true;
  CHECK(found_empty);
  fs::remove_all(dir);
}

TEST_CASE("study output is deterministic modulo wall time") {
  StudyConfig c = tiny_mech_config();
  c.schedule = {0.0, 1.0, 0.25};
  c.dims = {2};
  const auto dir1 = fs::temp_directory_path() / "plrom_study_det1";
  const auto dir2 = fs::temp_directory_path() / "plrom_study_det2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  run_study(c, dir1);
  run_study(c, dir2);
  const auto l1 = read_lines(dir1 / "results.csv");
  const auto l2 = read_lines(dir2 / "results.csv");
  REQUIRE(l1.size() == l2.size());
  for (std::size_t i = 0; i < l1.size(); ++i)
    CHECK(drop_wall_column(l1[i]) == drop_wall_column(l2[i]));
  for (const char* name : {"summary_error.csv", "summary_condition.csv",
                           "summary_iterations.csv"})
    CHECK(read_lines(dir1 / name) == read_lines(dir2 / name));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}
