#pragma once

#include <string>
#include <vector>

namespace plrom::harness {

struct ParetoPoint {
  std::string kind;
  std::size_t dim = 0;
  double eps = 0.0;           // global relative error
  double wall_seconds = 0.0;  // online solve time
};

/// Non-dominated subset in (eps, wall_seconds), sorted by wall time.
/// A point dominates another when it is <= in both coordinates and < in one.
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points);

}  // namespace plrom::harness
