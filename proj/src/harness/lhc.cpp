#include <algorithm>
#include <numeric>
#include <random>

#include "plrom/error.hpp"
#include "plrom/harness/lhc.hpp"

namespace plrom::harness {

std::vector<Vector> lhc_sample(const std::vector<ParamRange>& ranges, std::size_t n,
                               std::uint64_t seed) {
  if (n < 1) throw InvalidInput("lhc_sample: need at least one sample");
  for (const auto& r : ranges)
    if (!(r.lo < r.hi))
      throw InvalidInput("lhc_sample: degenerate range for " + r.name);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vector> samples(n, Vector(ranges.size()));
  std::vector<std::size_t> perm(n);
  for (std::size_t d = 0; d < ranges.size(); ++d) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const double width = (ranges[d].hi - ranges[d].lo) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double within = unit(rng);
      samples[i][d] = ranges[d].lo + (static_cast<double>(perm[i]) + within) * width;
    }
  }
  return samples;
}

}  // namespace plrom::harness
