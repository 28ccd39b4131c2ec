#include <algorithm>

#include "plrom/error.hpp"
#include "plrom/harness/pareto.hpp"

namespace plrom::harness {

namespace {

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
  return a.eps <= b.eps && a.wall_seconds <= b.wall_seconds &&
         (a.eps < b.eps || a.wall_seconds < b.wall_seconds);
}

}  // namespace

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points) {
  if (points.empty()) throw InvalidInput("pareto_front: empty input");
  for (const auto& p : points)
    if (p.eps < 0.0 || !(p.wall_seconds > 0.0))
      throw InvalidInput("pareto_front: point outside the valid quadrant");

  std::vector<ParetoPoint> front;
  for (const auto& p : points) {
    const bool kept = std::none_of(points.begin(), points.end(),
                                   [&](const ParetoPoint& q) { return dominates(q, p); });
    if (kept) front.push_back(p);
  }
  std::sort(front.begin(), front.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.wall_seconds != b.wall_seconds) return a.wall_seconds < b.wall_seconds;
    if (a.eps != b.eps) return a.eps < b.eps;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.dim < b.dim;
  });
  return front;
}

}  // namespace plrom::harness
