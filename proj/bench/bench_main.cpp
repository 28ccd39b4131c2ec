// Parallel vs serial timing for the two hot kernels: element assembly and
// the dense products behind the normal equations.
#include <cstdio>
#include <random>

#include <omp.h>

#include "plrom/fom/mechanical.hpp"
#include "plrom/linalg/dense_matrix.hpp"

using namespace plrom;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());

  {
    fom::QuadMesh mesh(120, 24, 0.1, 0.02, 5);
    fom::MechanicalProblem problem(std::move(mesh),
                                   std::vector<fom::MechanicalMaterial>(5, {1.103e11, 0.32}),
                                   1e7);
    linalg::Vector w = problem.initial_state(0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e-6, 1e-6);
    for (double& x : w) x += u(rng);

    const double tp = time_best_of(5, [&] { (void)problem.assembled_residual(w, 1.0); });
    const double ts = time_best_of(5, [&] { (void)problem.assembled_residual_serial(w, 1.0); });
    std::printf("residual assembly (%zu dofs): parallel %.4f ms, serial %.4f ms, speedup %.2fx\n",
                problem.layout().total_dofs(), 1e3 * tp, 1e3 * ts, ts / tp);

    const double tjp = time_best_of(5, [&] { (void)problem.assembled_jacobian(w, 1.0); });
    const double tjs = time_best_of(5, [&] { (void)problem.assembled_jacobian_serial(w, 1.0); });
    std::printf("jacobian assembly: parallel %.4f ms, serial %.4f ms, speedup %.2fx\n\n",
                1e3 * tjp, 1e3 * tjs, tjs / tjp);
  }

  {
    const std::size_t n = 4000, m = 60;
    linalg::DenseMatrix a(n, m);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t r = 0; r < n; ++r) a(r, c) = g(rng);

    const double tp = time_best_of(10, [&] { (void)linalg::matmul_at_b(a, a); });
    const double ts = time_best_of(10, [&] { (void)linalg::serial::matmul_at_b(a, a); });
    std::printf("A^T A (%zux%zu): parallel %.4f ms, serial %.4f ms, speedup %.2fx\n", n, m,
                1e3 * tp, 1e3 * ts, ts / tp);
  }
  return 0;
}
