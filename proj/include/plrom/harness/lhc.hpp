#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plrom/linalg/dense_matrix.hpp"

namespace plrom::harness {

using linalg::Vector;

struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

/// Latin hypercube sample: n points, one per equal-width stratum in every
/// dimension, uniform within the stratum. Deterministic given the seed.
std::vector<Vector> lhc_sample(const std::vector<ParamRange>& ranges, std::size_t n,
                               std::uint64_t seed);

}  // namespace plrom::harness
