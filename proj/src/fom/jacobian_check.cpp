#include "plrom/fom/jacobian_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace plrom::fom {

double jacobian_check(const FomProblem& problem, std::span<const double> state, double t,
                      std::size_t sample_cols, std::uint64_t seed) {
  const std::size_t n = problem.num_dofs();
  const SparseMatrix jac = problem.jacobian(state, t, /*zero_dbc_columns=*/false);

  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  if (sample_cols > 0 && sample_cols < n) {
    std::mt19937_64 rng(seed);
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(sample_cols);
  }

  Vector wp(state.begin(), state.end());
  Vector wm(state.begin(), state.end());
  double worst = 0.0;
  for (std::size_t j : cols) {
    const double h = 1e-6 * (1.0 + std::abs(state[j]));
    wp[j] = state[j] + h;
    wm[j] = state[j] - h;
    const Vector rp = problem.residual(wp, t);
    const Vector rm = problem.residual(wm, t);
    wp[j] = state[j];
    wm[j] = state[j];

    double col_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      col_scale = std::max(col_scale, std::abs(jac.at(i, j)));
    double col_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fd = (rp[i] - rm[i]) / (2.0 * h);
      col_err = std::max(col_err, std::abs(fd - jac.at(i, j)));
    }
    worst = std::max(worst, col_err / std::max(col_scale, 1e-300));
  }
  return worst;
}

}  // namespace plrom::fom
