#include <cmath>

#include "plrom/lspg/lspg.hpp"

namespace plrom::lspg {

double error_metric(const std::vector<Vector>& fom_trajectory,
                    const std::vector<Vector>& rom_trajectory) {
  if (fom_trajectory.empty()) throw InvalidInput("error_metric: empty reference trajectory");
  if (rom_trajectory.size() > fom_trajectory.size())
    throw DimensionMismatch("error_metric: more ROM states than FOM states");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t s = 0; s < fom_trajectory.size(); ++s) {
    const Vector& w = fom_trajectory[s];
    den += linalg::norm2(w);
    if (s < rom_trajectory.size()) {
      const Vector& wr = rom_trajectory[s];
      if (wr.size() != w.size()) throw DimensionMismatch("error_metric: state length mismatch");
      double d = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) d += (w[i] - wr[i]) * (w[i] - wr[i]);
      num += std::sqrt(d);
    } else {
      // Missing (failed) steps count their full reference norm as error.
      num += linalg::norm2(w);
    }
  }
  if (den == 0.0) throw InvalidInput("error_metric: zero reference trajectory norm");
  return num / den;
}

}  // namespace plrom::lspg
