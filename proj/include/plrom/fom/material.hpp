#pragma once

#include <array>
#include <cmath>

#include "plrom/error.hpp"

namespace plrom::fom {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Tangent3333 = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

inline double det3(const Mat3& f) {
  return f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1]) -
         f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0]) +
         f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0]);
}

inline Mat3 inv3(const Mat3& f, double det) {
  Mat3 g;
  g[0][0] = (f[1][1] * f[2][2] - f[1][2] * f[2][1]) / det;
  g[0][1] = (f[0][2] * f[2][1] - f[0][1] * f[2][2]) / det;
  g[0][2] = (f[0][1] * f[1][2] - f[0][2] * f[1][1]) / det;
  g[1][0] = (f[1][2] * f[2][0] - f[1][0] * f[2][2]) / det;
  g[1][1] = (f[0][0] * f[2][2] - f[0][2] * f[2][0]) / det;
  g[1][2] = (f[0][2] * f[1][0] - f[0][0] * f[1][2]) / det;
  g[2][0] = (f[1][0] * f[2][1] - f[1][1] * f[2][0]) / det;
  g[2][1] = (f[0][1] * f[2][0] - f[0][0] * f[2][1]) / det;
  g[2][2] = (f[0][0] * f[1][1] - f[0][1] * f[1][0]) / det;
  return g;
}

/// Compressible Neohookean model, volumetric/deviatoric split:
///   W = kappa/2 [ (J^2-1)/2 - ln J ] + mu/2 [ J^{-2/3} tr(F F^T) - 3 ].
struct NeoHookean {
  double kappa;  // bulk modulus E / (3(1-2nu))
  double mu;     // shear modulus E / (2(1+nu))

  static NeoHookean from_youngs(double youngs, double poisson) {
    return {youngs / (3.0 * (1.0 - 2.0 * poisson)), youngs / (2.0 * (1.0 + poisson))};
  }

  double energy(const Mat3& f) const {
    const double j = det3(f);
    if (j <= 0.0) throw ElementInversion("NeoHookean: det(F) <= 0");
    double i1 = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) i1 += f[a][b] * f[a][b];
    return 0.5 * kappa * (0.5 * (j * j - 1.0) - std::log(j)) +
           0.5 * mu * (std::pow(j, -2.0 / 3.0) * i1 - 3.0);
  }

  /// First Piola-Kirchhoff stress P = dW/dF.
  Mat3 piola(const Mat3& f) const {
    const double j = det3(f);
    if (j <= 0.0) throw ElementInversion("NeoHookean: det(F) <= 0");
    const Mat3 finv = inv3(f, j);
    double i1 = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) i1 += f[a][b] * f[a][b];
    const double jm23 = std::pow(j, -2.0 / 3.0);
    Mat3 p;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double finvT = finv[b][a];
        p[a][b] = 0.5 * kappa * (j * j - 1.0) * finvT +
                  mu * jm23 * (f[a][b] - i1 / 3.0 * finvT);
      }
    return p;
  }

  /// Material tangent A_{ijkl} = dP_{ij}/dF_{kl}.
  Tangent3333 tangent(const Mat3& f) const {
    const double j = det3(f);
    if (j <= 0.0) throw ElementInversion("NeoHookean: det(F) <= 0");
    const Mat3 finv = inv3(f, j);
    double i1 = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) i1 += f[a][b] * f[a][b];
    const double jm23 = std::pow(j, -2.0 / 3.0);
    Tangent3333 t{};
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double finvT_ij = finv[jj][i];
            const double finv_lk = finv[l][k];
            double a = kappa * j * j * finv_lk * finvT_ij -
                       0.5 * kappa * (j * j - 1.0) * finv[jj][k] * finv[l][i];
            a += mu * (-2.0 / 3.0) * jm23 * finv_lk * (f[i][jj] - i1 / 3.0 * finvT_ij);
            a += mu * jm23 *
                 ((i == k && jj == l ? 1.0 : 0.0) - 2.0 / 3.0 * f[k][l] * finvT_ij +
                  i1 / 3.0 * finv[jj][k] * finv[l][i]);
            t[i][jj][k][l] = a;
          }
    return t;
  }
};

}  // namespace plrom::fom
