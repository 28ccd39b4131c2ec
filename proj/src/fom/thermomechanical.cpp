#include "plrom/fom/thermomechanical.hpp"

#include <atomic>
#include <cmath>

#include "q1.hpp"

namespace plrom::fom {

namespace {

constexpr std::size_t kElemDofs = 12;  // 8 displacement + 4 temperature

Mat3 deformation_gradient(const std::array<std::array<double, 2>, 4>& grad_x,
                          const std::array<double, 8>& u) {
  Mat3 f{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) f[i][j] += u[2 * a + i] * grad_x[a][j];
  return f;
}

}  // namespace

struct ThermoMechanicalProblem::Local {
  std::array<double, kElemDofs> f{};
  std::array<double, kElemDofs * kElemDofs> k{};  // row-major
};

ThermoMechanicalProblem::ThermoMechanicalProblem(
    QuadMesh mesh, std::vector<ThermoMechanicalMaterial> per_block, double initial_temperature,
    double temp_rate, double pressure_rate)
    : mesh_(std::move(mesh)), raw_materials_(std::move(per_block)),
      initial_temperature_(initial_temperature), temp_rate_(temp_rate),
      pressure_rate_(pressure_rate) {
  std::size_t max_block = 0;
  for (std::size_t b : mesh_.element_block) max_block = std::max(max_block, b);
  if (raw_materials_.size() <= max_block)
    throw InvalidInput("ThermoMechanicalProblem: missing material for a block");
  for (std::size_t b = 0; b < raw_materials_.size(); ++b) {
    const auto& m = raw_materials_[b];
    if (m.youngs <= 0.0 || m.poisson <= 0.0 || m.poisson >= 0.5 || m.conductivity <= 0.0 ||
        m.ref_temperature <= 0.0)
      throw InvalidInput("ThermoMechanicalProblem: material parameters out of range");
    materials_.push_back(NeoHookean::from_youngs(m.youngs, m.poisson));
    params_["E_" + std::to_string(b)] = m.youngs;
    params_["nu_" + std::to_string(b)] = m.poisson;
    params_["k_" + std::to_string(b)] = m.conductivity;
    params_["alpha_" + std::to_string(b)] = m.expansion;
    params_["T_ref_" + std::to_string(b)] = m.ref_temperature;
  }
  params_["T_initial"] = initial_temperature_;
  params_["temp_rate"] = temp_rate_;
  params_["pressure_rate"] = pressure_rate_;

  std::vector<std::size_t> block_ux, block_uy, block_tl, block_tr;
  for (std::size_t node : mesh_.left_nodes()) {
    block_ux.push_back(dof(node, 0));
    block_uy.push_back(dof(node, 1));
    block_tl.push_back(temp_dof(node));
  }
  for (std::size_t node : mesh_.right_nodes()) block_tr.push_back(temp_dof(node));
  const std::size_t total = 3 * mesh_.num_nodes();
  std::vector<char> constrained(total, 0);
  for (auto* blk : {&block_ux, &block_uy, &block_tl, &block_tr})
    for (std::size_t d : *blk) constrained[d] = 1;
  std::vector<std::size_t> free_dofs;
  for (std::size_t d = 0; d < total; ++d)
    if (!constrained[d]) free_dofs.push_back(d);
  layout_ = DofLayout(total, std::move(free_dofs), {block_ux, block_uy, block_tl, block_tr});
}

Vector ThermoMechanicalProblem::dirichlet_values(double t) const {
  Vector g(layout_.num_dbc(), 0.0);
  const std::size_t n_left = mesh_.left_nodes().size();
  // blocks: [ux, uy, T_left, T_right] in that order
  std::size_t pos = 2 * n_left;
  for (std::size_t i = 0; i < n_left; ++i) g[pos + i] = initial_temperature_;
  pos += n_left;
  const double t_right = initial_temperature_ + temp_rate_ * t;
  for (std::size_t i = 0; i < mesh_.right_nodes().size(); ++i) g[pos + i] = t_right;
  return g;
}

Vector ThermoMechanicalProblem::rest_state() const {
  Vector w(num_dofs(), 0.0);
  for (std::size_t n = 0; n < mesh_.num_nodes(); ++n) w[temp_dof(n)] = initial_temperature_;
  return w;
}

Vector ThermoMechanicalProblem::initial_state(double t) const {
  Vector w = rest_state();
  const Vector g = dirichlet_values(t);
  for (std::size_t k = 0; k < layout_.num_dbc(); ++k) w[layout_.dbc_dofs()[k]] = g[k];
  return w;
}

template <bool WithJacobian>
void ThermoMechanicalProblem::assemble(std::span<const double> state, double t, bool parallel,
                                       Vector* r, std::vector<std::size_t>* ri,
                                       std::vector<std::size_t>* ci,
                                       std::vector<double>* vals) const {
  const std::size_t ne = mesh_.num_elements();
  std::vector<Local> local(ne);
  std::atomic<bool> inverted{false};

  auto element = [&](std::size_t e) {
    Local& out = local[e];
    const auto& nodes = mesh_.elements[e];
    const auto& raw = raw_materials_[mesh_.element_block[e]];
    const auto& neo = materials_[mesh_.element_block[e]];
    std::array<double, 8> u;
    std::array<double, 4> temp;
    for (std::size_t a = 0; a < 4; ++a) {
      u[2 * a] = state[nodes[a] * 3];
      u[2 * a + 1] = state[nodes[a] * 3 + 1];
      temp[a] = state[nodes[a] * 3 + 2];
    }
    for (std::size_t gp = 0; gp < 4; ++gp) {
      const auto g = q1::geom(mesh_, e, gp);
      const auto [xi, eta] = q1::gauss_points[gp];
      const auto sh = q1::shape(xi, eta);
      double tgp = 0.0;
      for (std::size_t a = 0; a < 4; ++a) tgp += sh[a] * temp[a];
      const double c = std::exp(-raw.expansion * (tgp - raw.ref_temperature));  // F_T^{-1} scale
      const Mat3 f = deformation_gradient(g.grad_x, u);
      Mat3 fm;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) fm[i][j] = c * f[i][j];
      const Mat3 pm = neo.piola(fm);  // dW/dF_M
      // P = dW/dF = c * P_M
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t i = 0; i < 2; ++i)
          out.f[3 * a + i] +=
              c * (pm[i][0] * g.grad_x[a][0] + pm[i][1] * g.grad_x[a][1]) * g.jxw;
      // thermal residual: k grad T . grad N
      double gt0 = 0.0, gt1 = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        gt0 += temp[a] * g.grad_x[a][0];
        gt1 += temp[a] * g.grad_x[a][1];
      }
      for (std::size_t a = 0; a < 4; ++a)
        out.f[3 * a + 2] +=
            raw.conductivity * (gt0 * g.grad_x[a][0] + gt1 * g.grad_x[a][1]) * g.jxw;

      if constexpr (WithJacobian) {
        const Tangent3333 am = neo.tangent(fm);
        // displacement block: c^2 A_M
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t b = 0; b < 4; ++b)
              for (std::size_t k = 0; k < 2; ++k) {
                double s = 0.0;
                for (std::size_t jj = 0; jj < 2; ++jj)
                  for (std::size_t l = 0; l < 2; ++l)
                    s += am[i][jj][k][l] * g.grad_x[a][jj] * g.grad_x[b][l];
                out.k[(3 * a + i) * kElemDofs + 3 * b + k] += c * c * s * g.jxw;
              }
        // mechanical-thermal coupling: dP/dT = -alpha c (P_M + c A_M : F)
        Mat3 amf{};
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t jj = 0; jj < 3; ++jj) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k)
              for (std::size_t l = 0; l < 3; ++l) s += am[i][jj][k][l] * f[k][l];
            amf[i][jj] = s;
          }
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t i = 0; i < 2; ++i) {
            double row = 0.0;
            for (std::size_t jj = 0; jj < 2; ++jj)
              row += (pm[i][jj] + c * amf[i][jj]) * g.grad_x[a][jj];
            const double dpdt = -raw.expansion * c * row;
            for (std::size_t b = 0; b < 4; ++b)
              out.k[(3 * a + i) * kElemDofs + 3 * b + 2] += dpdt * sh[b] * g.jxw;
          }
        // thermal block
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t b = 0; b < 4; ++b)
            out.k[(3 * a + 2) * kElemDofs + 3 * b + 2] +=
                raw.conductivity *
                (g.grad_x[a][0] * g.grad_x[b][0] + g.grad_x[a][1] * g.grad_x[b][1]) * g.jxw;
      }
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t e = 0; e < static_cast<std::ptrdiff_t>(ne); ++e) {
      try {
        element(static_cast<std::size_t>(e));
      } catch (const ElementInversion&) {
        inverted.store(true, std::memory_order_relaxed);
      }
    }
  } else {
    for (std::size_t e = 0; e < ne; ++e) element(e);
  }
  if (inverted.load()) throw ElementInversion("thermomechanical: det(F) <= 0 during assembly");

  if (r) {
    r->assign(num_dofs(), 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& nodes = mesh_.elements[e];
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t i = 0; i < 3; ++i)
          (*r)[nodes[a] * 3 + i] += local[e].f[3 * a + i];
    }
    const double p = pressure_rate_ * t;
    if (p != 0.0) {
      const double le = mesh_.lx / static_cast<double>(mesh_.nx);
      for (std::size_t node : mesh_.bottom_nodes()) {
        const bool corner = node == 0 || node == mesh_.nx;
        (*r)[dof(node, 1)] -= p * le * (corner ? 0.5 : 1.0);
      }
    }
  }
  if constexpr (WithJacobian) {
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& nodes = mesh_.elements[e];
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t j = 0; j < 3; ++j) {
              const double v = local[e].k[(3 * a + i) * kElemDofs + 3 * b + j];
              if (v == 0.0 && !(a == b && i == j)) continue;
              ri->push_back(nodes[a] * 3 + i);
              ci->push_back(nodes[b] * 3 + j);
              vals->push_back(v);
            }
    }
  }
}

Vector ThermoMechanicalProblem::assembled_residual(std::span<const double> state,
                                                   double t) const {
  Vector r;
  assemble<false>(state, t, true, &r, nullptr, nullptr, nullptr);
  return r;
}

Vector ThermoMechanicalProblem::assembled_residual_serial(std::span<const double> state,
                                                          double t) const {
  Vector r;
  assemble<false>(state, t, false, &r, nullptr, nullptr, nullptr);
  return r;
}

SparseMatrix ThermoMechanicalProblem::assembled_jacobian(std::span<const double> state,
                                                         double t) const {
  std::vector<std::size_t> ri, ci;
  std::vector<double> vals;
  assemble<true>(state, t, true, nullptr, &ri, &ci, &vals);
  return SparseMatrix::from_triplets(num_dofs(), num_dofs(), ri, ci, vals);
}

}  // namespace plrom::fom
