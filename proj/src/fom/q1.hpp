#pragma once

#include <array>

#include "plrom/error.hpp"
#include "plrom/fom/mesh.hpp"

namespace plrom::fom::q1 {

// 2x2 Gauss quadrature on the reference square.
inline constexpr double kGp = 0.5773502691896257;
inline constexpr std::array<std::array<double, 2>, 4> gauss_points{
    {{-kGp, -kGp}, {kGp, -kGp}, {kGp, kGp}, {-kGp, kGp}}};
inline constexpr double gauss_weight = 1.0;

inline std::array<double, 4> shape(double xi, double eta) {
  return {0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta),
          0.25 * (1 + xi) * (1 + eta), 0.25 * (1 - xi) * (1 + eta)};
}

inline std::array<std::array<double, 2>, 4> shape_grad_ref(double xi, double eta) {
  return {{{-0.25 * (1 - eta), -0.25 * (1 - xi)},
           {0.25 * (1 - eta), -0.25 * (1 + xi)},
           {0.25 * (1 + eta), 0.25 * (1 + xi)},
           {-0.25 * (1 + eta), 0.25 * (1 - xi)}}};
}

struct GaussPointGeom {
  std::array<std::array<double, 2>, 4> grad_x;  // dN/dX per node
  double jxw;                                   // det(J) * weight
};

// Geometry factors for one element at one gauss point, reference config.
inline GaussPointGeom geom(const QuadMesh& mesh, std::size_t elem, std::size_t gp) {
  const auto& nodes = mesh.elements[elem];
  const auto [xi, eta] = gauss_points[gp];
  const auto dref = shape_grad_ref(xi, eta);
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;  // dX/dxi
  for (int a = 0; a < 4; ++a) {
    const auto& x = mesh.coords[nodes[static_cast<std::size_t>(a)]];
    j00 += dref[static_cast<std::size_t>(a)][0] * x[0];
    j01 += dref[static_cast<std::size_t>(a)][1] * x[0];
    j10 += dref[static_cast<std::size_t>(a)][0] * x[1];
    j11 += dref[static_cast<std::size_t>(a)][1] * x[1];
  }
  const double det = j00 * j11 - j01 * j10;
  if (det <= 0.0) throw MeshError("q1: non-positive element map Jacobian");
  GaussPointGeom g;
  g.jxw = det * gauss_weight;
  for (std::size_t a = 0; a < 4; ++a) {
    // dN/dX = J^{-T} dN/dxi
    g.grad_x[a][0] = (j11 * dref[a][0] - j10 * dref[a][1]) / det;
    g.grad_x[a][1] = (-j01 * dref[a][0] + j00 * dref[a][1]) / det;
  }
  return g;
}

}  // namespace plrom::fom::q1
