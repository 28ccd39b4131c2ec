#include "plrom/linalg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace plrom::linalg {

Vector solve_dense_spd(const DenseMatrix& a, std::span<const double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve_dense_spd: shape mismatch");
  double amax = 0.0;
  for (double v : a.data()) amax = std::max(amax, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(amax, 1.0))
        throw FactorizationError("solve_dense_spd: matrix not symmetric", static_cast<int>(i));

  // Cholesky, lower triangle
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0 || !std::isfinite(d))
      throw FactorizationError("solve_dense_spd: non-positive pivot", static_cast<int>(j));
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

LuFactors::LuFactors(const SparseMatrix& a) : lu_(a.to_dense()) {
  if (a.rows() != a.cols()) throw DimensionMismatch("lu_factor: matrix not square");
  factor();
}

LuFactors::LuFactors(const DenseMatrix& a) : lu_(a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("lu_factor: matrix not square");
  factor();
}

void LuFactors::factor() {
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double pmax = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > pmax) {
        pmax = std::abs(lu_(i, k));
        piv = i;
      }
    }
    if (pmax == 0.0)
      throw FactorizationError("lu_factor: singular matrix", static_cast<int>(k));
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = lu_(i, k) * inv;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

Vector LuFactors::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw DimensionMismatch("LuFactors::solve: size mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * y[k];
    y[i] = s;
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x[k];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

LuFactors lu_factor(const SparseMatrix& a) { return LuFactors(a); }

// ILU(p) with p = 1, IKJ ordering, no pivoting.
IluFactors::IluFactors(const SparseMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("ilu1_factor: matrix not square");
  constexpr int kFillLevel = 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;

  std::vector<std::size_t> off{0}, cidx, diag;
  std::vector<double> vals;
  std::vector<int> levels;  // per stored entry, aligned with cidx/vals

  std::vector<double> wval(n, 0.0);
  std::vector<int> wlev(n, kInf);
  std::vector<char> inrow(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cols;
    for (std::size_t p = a.offsets()[i]; p < a.offsets()[i + 1]; ++p) {
      const std::size_t j = a.col_idx()[p];
      wval[j] = a.values()[p];
      wlev[j] = 0;
      inrow[j] = 1;
      cols.push_back(j);
    }
    if (!inrow[i]) throw InvalidInput("ilu1_factor: diagonal structurally absent");
    std::sort(cols.begin(), cols.end());

    for (std::size_t ki = 0; ki < cols.size(); ++ki) {
      const std::size_t k = cols[ki];
      if (k >= i) break;
      if (wlev[k] > kFillLevel) continue;
      const double ukk = vals[diag[k]];
      if (ukk == 0.0)
        throw FactorizationError("ilu1_factor: zero pivot", static_cast<int>(k));
      const double lik = wval[k] / ukk;
      wval[k] = lik;
      // U-part of row k
      for (std::size_t p = diag[k] + 1; p < off[k + 1]; ++p) {
        const std::size_t j = cidx[p];
        const int lev = wlev[k] + levels[p] + 1;
        if (inrow[j]) {
          wval[j] -= lik * vals[p];
          wlev[j] = std::min(wlev[j], lev);
        } else if (lev <= kFillLevel) {
          wval[j] = -lik * vals[p];
          wlev[j] = lev;
          inrow[j] = 1;
          cols.insert(std::upper_bound(cols.begin() + static_cast<std::ptrdiff_t>(ki) + 1,
                                       cols.end(), j),
                      j);
        }
      }
    }

    diag.push_back(0);
    for (std::size_t j : cols) {
      if (j == i) diag.back() = vals.size();
      cidx.push_back(j);
      vals.push_back(wval[j]);
      levels.push_back(wlev[j]);
      wval[j] = 0.0;
      wlev[j] = kInf;
      inrow[j] = 0;
    }
    off.push_back(vals.size());
    if (vals[diag.back()] == 0.0)
      throw FactorizationError("ilu1_factor: zero pivot", static_cast<int>(i));
  }
  lu_ = SparseMatrix(n, n, std::move(off), std::move(cidx), std::move(vals));
  diag_pos_ = std::move(diag);
}

Vector IluFactors::solve(std::span<const double> v) const {
  const std::size_t n = lu_.rows();
  if (v.size() != n) throw DimensionMismatch("IluFactors::solve: size mismatch");
  const auto& off = lu_.offsets();
  const auto& ci = lu_.col_idx();
  const auto& a = lu_.values();
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = v[i];
    for (std::size_t p = off[i]; p < diag_pos_[i]; ++p) s -= a[p] * y[ci[p]];
    y[i] = s;  // unit diagonal on L
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t p = diag_pos_[ii] + 1; p < off[ii + 1]; ++p) s -= a[p] * x[ci[p]];
    const double d = a[diag_pos_[ii]];
    if (d == 0.0)
      throw FactorizationError("IluFactors::solve: zero pivot", static_cast<int>(ii));
    x[ii] = s / d;
  }
  return x;
}

IluFactors ilu1_factor(const SparseMatrix& a) { return IluFactors(a); }

namespace {

IterativeResult cg(const SparseMatrix& a, std::span<const double> b, double tol,
                   std::size_t max_iter) {
  const std::size_t n = a.rows();
  IterativeResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  Vector r(b.begin(), b.end());
  Vector p = r;
  double rr = dot(r, r);
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (std::sqrt(rr) <= tol * bnorm) {
      res.converged = true;
      return res;
    }
    Vector ap = a.apply(p);
    const double pap = dot(p, ap);
    if (pap == 0.0) throw Breakdown("cg: zero curvature denominator");
    const double alpha = rr / pap;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    res.iterations = it + 1;
  }
  res.converged = std::sqrt(rr) <= tol * bnorm;
  return res;
}

constexpr std::size_t kGmresRestart = 30;

IterativeResult gmres(const SparseMatrix& a, std::span<const double> b, double tol,
                      std::size_t max_iter) {
  const std::size_t n = a.rows();
  IterativeResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  while (res.iterations < max_iter) {
    Vector r = a.apply(res.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = norm2(r);
    if (beta <= tol * bnorm) {
      res.converged = true;
      return res;
    }
    const std::size_t m = std::min(kGmresRestart, max_iter - res.iterations);
    DenseMatrix v(n, m + 1);
    DenseMatrix h(m + 1, m);
    Vector cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = r[i] / beta;
    g[0] = beta;
    std::size_t k = 0;
    for (; k < m; ++k) {
      Vector w = a.apply(v.col(k));
      for (std::size_t j = 0; j <= k; ++j) {
        h(j, k) = dot(v.col(j), w);
        axpy(-h(j, k), v.col(j), w);
      }
      h(k + 1, k) = norm2(w);
      const double subdiag = h(k + 1, k);
      ++res.iterations;
      if (subdiag > 0.0)
        for (std::size_t i = 0; i < n; ++i) v(i, k + 1) = w[i] / subdiag;
      // apply existing Givens rotations
      for (std::size_t j = 0; j < k; ++j) {
        const double t = cs[j] * h(j, k) + sn[j] * h(j + 1, k);
        h(j + 1, k) = -sn[j] * h(j, k) + cs[j] * h(j + 1, k);
        h(j, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      if (denom == 0.0) throw Breakdown("gmres: zero rotation denominator");
      cs[k] = h(k, k) / denom;
      sn[k] = h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= tol * bnorm || subdiag == 0.0) {
        ++k;
        break;
      }
    }
    // back substitution on the k x k triangular system
    Vector yk(k, 0.0);
    for (std::size_t ii = k; ii-- > 0;) {
      double s = g[ii];
      for (std::size_t j = ii + 1; j < k; ++j) s -= h(ii, j) * yk[j];
      yk[ii] = s / h(ii, ii);
    }
    for (std::size_t j = 0; j < k; ++j) axpy(yk[j], v.col(j), res.x);
  }
  Vector r = a.apply(res.x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  res.converged = norm2(r) <= tol * bnorm;
  return res;
}

}  // namespace

IterativeResult solve_iterative(const SparseMatrix& a, std::span<const double> b,
                                KrylovMethod method, double tol, std::size_t max_iter) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve_iterative: matrix not square");
  if (b.size() != a.rows()) throw DimensionMismatch("solve_iterative: rhs size mismatch");
  return method == KrylovMethod::Cg ? cg(a, b, tol, max_iter) : gmres(a, b, tol, max_iter);
}

}  // namespace plrom::linalg
