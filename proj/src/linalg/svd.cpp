#include "plrom/linalg/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace plrom::linalg {

namespace {

// One-sided Jacobi on the columns of A (m >= n assumed by the caller).
// On return `work` holds U*Sigma and `v` the accumulated right rotations.
void jacobi_sweep_svd(DenseMatrix& work, DenseMatrix& v) {
  const std::size_t n = work.cols();
  const double eps = 1e-15;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto ap = work.col(p);
        auto aq = work.col(q);
        const double alpha = dot(ap, ap);
        const double beta = dot(aq, aq);
        const double gamma = dot(ap, aq);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < work.rows(); ++i) {
          const double wp = work(i, p), wq = work(i, q);
          work(i, p) = c * wp - s * wq;
          work(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

// Gram-Schmidt completion for columns whose singular value vanished.
void complete_null_columns(DenseMatrix& u, const std::vector<bool>& zero_col) {
  const std::size_t m = u.rows(), n = u.cols();
  for (std::size_t j = 0; j < n; ++j) {
    if (!zero_col[j]) continue;
    for (std::size_t cand = 0; cand < m; ++cand) {
      Vector e(m, 0.0);
      e[cand] = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (zero_col[k] && k >= j) continue;  // only project on columns already set
        const double proj = dot(u.col(k), e);
        axpy(-proj, u.col(k), e);
      }
      // re-orthogonalize once
      for (std::size_t k = 0; k < n; ++k) {
        if (zero_col[k] && k >= j) continue;
        const double proj = dot(u.col(k), e);
        axpy(-proj, u.col(k), e);
      }
      const double nrm = norm2(e);
      if (nrm > 1e-8) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = e[i] / nrm;
        break;
      }
    }
  }
}

SvdResult thin_svd_tall(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  DenseMatrix work = a;
  DenseMatrix v = DenseMatrix::identity(n);
  jacobi_sweep_svd(work, v);

  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(work.col(j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SvdResult out;
  out.left_vectors = DenseMatrix(m, n);
  out.right_vectors = DenseMatrix(n, n);
  out.singular_values.resize(n);
  const double smax = sigma.empty() ? 0.0 : sigma[order[0]];
  std::vector<bool> zero_col(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    if (sigma[src] > smax * 1e-300 && sigma[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.left_vectors(i, j) = work(i, src) / sigma[src];
    } else {
      out.singular_values[j] = 0.0;
      zero_col[j] = true;
    }
    for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, j) = v(i, src);
  }
  complete_null_columns(out.left_vectors, zero_col);

  // Deterministic sign: largest-magnitude entry of each left vector positive.
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double av = std::abs(out.left_vectors(i, j));
      if (av > amax) {
        amax = av;
        imax = i;
      }
    }
    if (out.left_vectors(imax, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.left_vectors(i, j) = -out.left_vectors(i, j);
      for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, j) = -out.right_vectors(i, j);
    }
  }
  return out;
}

}  // namespace

SvdResult thin_svd(const DenseMatrix& a) {
  if (a.empty()) throw InvalidInput("thin_svd: empty matrix");
  if (!a.all_finite()) throw InvalidInput("thin_svd: non-finite entries");
  if (a.rows() >= a.cols()) return thin_svd_tall(a);
  // A = U S V^T  <=>  A^T = V S U^T
  DenseMatrix at(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) at(j, i) = a(i, j);
  SvdResult r = thin_svd_tall(at);
  SvdResult out;
  out.left_vectors = std::move(r.right_vectors);
  out.right_vectors = std::move(r.left_vectors);
  out.singular_values = std::move(r.singular_values);
  // keep the sign convention anchored on the left vectors
  const std::size_t m = out.left_vectors.rows(), n = out.left_vectors.cols();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double av = std::abs(out.left_vectors(i, j));
      if (av > amax) {
        amax = av;
        imax = i;
      }
    }
    if (out.left_vectors(imax, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.left_vectors(i, j) = -out.left_vectors(i, j);
      for (std::size_t i = 0; i < out.right_vectors.rows(); ++i)
        out.right_vectors(i, j) = -out.right_vectors(i, j);
    }
  }
  return out;
}

double condition_number_2norm(const DenseMatrix& a) {
  if (a.empty()) throw InvalidInput("condition_number_2norm: empty matrix");
  const SvdResult s = thin_svd(a);
  const double smax = s.singular_values.front();
  const double smin = s.singular_values.back();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace plrom::linalg
