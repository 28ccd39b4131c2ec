#pragma once

#include "plrom/fom/problem.hpp"

namespace plrom::fom {

/// Central finite differences of the extended residual against the analytic
/// extended Jacobian, step h = 1e-6 (1 + |w_i|). Returns the maximum
/// relative discrepancy over the sampled columns (all columns when
/// `sample_cols` is 0).
double jacobian_check(const FomProblem& problem, std::span<const double> state, double t,
                      std::size_t sample_cols = 0, std::uint64_t seed = 0);

}  // namespace plrom::fom
