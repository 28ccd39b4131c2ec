#include "plrom/fom/mechanical.hpp"

#include <atomic>

#include "q1.hpp"

namespace plrom::fom {

namespace {

Mat3 deformation_gradient(const std::array<std::array<double, 2>, 4>& grad_x,
                          const std::array<double, 8>& u) {
  Mat3 f{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (std::size_t a = 0; a < 4; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            u[2 * a + static_cast<std::size_t>(i)] * grad_x[a][static_cast<std::size_t>(j)];
  return f;
}

struct ElemResidual {
  std::array<double, 8> f;
};
struct ElemStiffness {
  std::array<double, 64> k;  // row-major (ai, bk)
};

}  // namespace

MechanicalProblem::MechanicalProblem(QuadMesh mesh, std::vector<MechanicalMaterial> per_block,
                                     double pressure_rate)
    : mesh_(std::move(mesh)), pressure_rate_(pressure_rate) {
  std::size_t max_block = 0;
  for (std::size_t b : mesh_.element_block) max_block = std::max(max_block, b);
  if (per_block.size() <= max_block)
    throw InvalidInput("MechanicalProblem: missing material for a block");
  for (std::size_t b = 0; b < per_block.size(); ++b) {
    const auto& m = per_block[b];
    if (m.youngs <= 0.0 || m.poisson <= 0.0 || m.poisson >= 0.5)
      throw InvalidInput("MechanicalProblem: material parameters out of range");
    materials_.push_back(NeoHookean::from_youngs(m.youngs, m.poisson));
    params_["E_" + std::to_string(b)] = m.youngs;
    params_["nu_" + std::to_string(b)] = m.poisson;
  }
  params_["pressure_rate"] = pressure_rate_;

  std::vector<std::size_t> block_x, block_y;
  for (std::size_t node : mesh_.left_nodes()) {
    block_x.push_back(dof(node, 0));
    block_y.push_back(dof(node, 1));
  }
  const std::size_t total = 2 * mesh_.num_nodes();
  std::vector<char> constrained(total, 0);
  for (std::size_t d : block_x) constrained[d] = 1;
  for (std::size_t d : block_y) constrained[d] = 1;
  std::vector<std::size_t> free_dofs;
  for (std::size_t d = 0; d < total; ++d)
    if (!constrained[d]) free_dofs.push_back(d);
  layout_ = DofLayout(total, std::move(free_dofs), {block_x, block_y});
}

Vector MechanicalProblem::dirichlet_values(double) const {
  return Vector(layout_.num_dbc(), 0.0);  // clamped edge
}

namespace {

template <typename MatAt>
void element_residual(const QuadMesh& mesh, std::size_t e, MatAt&& mat,
                      std::span<const double> state, ElemResidual& out) {
  out.f.fill(0.0);
  const auto& nodes = mesh.elements[e];
  std::array<double, 8> u;
  for (std::size_t a = 0; a < 4; ++a) {
    u[2 * a] = state[nodes[a] * 2];
    u[2 * a + 1] = state[nodes[a] * 2 + 1];
  }
  for (std::size_t gp = 0; gp < 4; ++gp) {
    const auto g = q1::geom(mesh, e, gp);
    const Mat3 f = deformation_gradient(g.grad_x, u);
    const Mat3 p = mat(e).piola(f);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t i = 0; i < 2; ++i)
        out.f[2 * a + i] += (p[i][0] * g.grad_x[a][0] + p[i][1] * g.grad_x[a][1]) * g.jxw;
  }
}

template <typename MatAt>
void element_stiffness(const QuadMesh& mesh, std::size_t e, MatAt&& mat,
                       std::span<const double> state, ElemStiffness& out) {
  out.k.fill(0.0);
  const auto& nodes = mesh.elements[e];
  std::array<double, 8> u;
  for (std::size_t a = 0; a < 4; ++a) {
    u[2 * a] = state[nodes[a] * 2];
    u[2 * a + 1] = state[nodes[a] * 2 + 1];
  }
  for (std::size_t gp = 0; gp < 4; ++gp) {
    const auto g = q1::geom(mesh, e, gp);
    const Mat3 f = deformation_gradient(g.grad_x, u);
    const Tangent3333 t = mat(e).tangent(f);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < 4; ++b)
          for (std::size_t k = 0; k < 2; ++k) {
            double s = 0.0;
            for (std::size_t jj = 0; jj < 2; ++jj)
              for (std::size_t l = 0; l < 2; ++l)
                s += t[i][jj][k][l] * g.grad_x[a][jj] * g.grad_x[b][l];
            out.k[(2 * a + i) * 8 + 2 * b + k] += s * g.jxw;
          }
  }
}

}  // namespace

Vector MechanicalProblem::assembled_residual(std::span<const double> state, double t) const {
  const std::size_t ne = mesh_.num_elements();
  std::vector<ElemResidual> local(ne);
  std::atomic<bool> inverted{false};
  auto mat = [this](std::size_t e) -> const NeoHookean& {
    return materials_[mesh_.element_block[e]];
  };
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < static_cast<std::ptrdiff_t>(ne); ++e) {
    try {
      element_residual(mesh_, static_cast<std::size_t>(e), mat, state,
                       local[static_cast<std::size_t>(e)]);
    } catch (const ElementInversion&) {
      inverted.store(true, std::memory_order_relaxed);
    }
  }
  if (inverted.load()) throw ElementInversion("mechanical: det(F) <= 0 during assembly");

  Vector r(num_dofs(), 0.0);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& nodes = mesh_.elements[e];
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t i = 0; i < 2; ++i) r[nodes[a] * 2 + i] += local[e].f[2 * a + i];
  }
  // dead pressure traction on the bottom edge, pointing up
  const double p = pressure_rate_ * t;
  if (p != 0.0) {
    const double le = mesh_.lx / static_cast<double>(mesh_.nx);
    for (std::size_t node : mesh_.bottom_nodes()) {
      const bool corner = node == 0 || node == mesh_.nx;
      r[dof(node, 1)] -= p * le * (corner ? 0.5 : 1.0);
    }
  }
  return r;
}

Vector MechanicalProblem::assembled_residual_serial(std::span<const double> state,
                                                    double t) const {
  Vector r(num_dofs(), 0.0);
  auto mat = [this](std::size_t e) -> const NeoHookean& {
    return materials_[mesh_.element_block[e]];
  };
  ElemResidual local;
  for (std::size_t e = 0; e < mesh_.num_elements(); ++e) {
    element_residual(mesh_, e, mat, state, local);
    const auto& nodes = mesh_.elements[e];
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t i = 0; i < 2; ++i) r[nodes[a] * 2 + i] += local.f[2 * a + i];
  }
  const double p = pressure_rate_ * t;
  if (p != 0.0) {
    const double le = mesh_.lx / static_cast<double>(mesh_.nx);
    for (std::size_t node : mesh_.bottom_nodes()) {
      const bool corner = node == 0 || node == mesh_.nx;
      r[dof(node, 1)] -= p * le * (corner ? 0.5 : 1.0);
    }
  }
  return r;
}

namespace {

template <typename Scatter>
void scatter_stiffness(const QuadMesh& mesh, const std::vector<ElemStiffness>& local,
                       Scatter&& push) {
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto& nodes = mesh.elements[e];
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < 4; ++b)
          for (std::size_t k = 0; k < 2; ++k)
            push(nodes[a] * 2 + i, nodes[b] * 2 + k, local[e].k[(2 * a + i) * 8 + 2 * b + k]);
  }
}

}  // namespace

SparseMatrix MechanicalProblem::assembled_jacobian(std::span<const double> state, double) const {
  const std::size_t ne = mesh_.num_elements();
  std::vector<ElemStiffness> local(ne);
  std::atomic<bool> inverted{false};
  auto mat = [this](std::size_t e) -> const NeoHookean& {
    return materials_[mesh_.element_block[e]];
  };
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < static_cast<std::ptrdiff_t>(ne); ++e) {
    try {
      element_stiffness(mesh_, static_cast<std::size_t>(e), mat, state,
                        local[static_cast<std::size_t>(e)]);
    } catch (const ElementInversion&) {
      inverted.store(true, std::memory_order_relaxed);
    }
  }
  if (inverted.load()) throw ElementInversion("mechanical: det(F) <= 0 during assembly");

  std::vector<std::size_t> ri, ci;
  std::vector<double> v;
  ri.reserve(ne * 64);
  ci.reserve(ne * 64);
  v.reserve(ne * 64);
  scatter_stiffness(mesh_, local, [&](std::size_t r, std::size_t c, double val) {
    ri.push_back(r);
    ci.push_back(c);
    v.push_back(val);
  });
  return SparseMatrix::from_triplets(num_dofs(), num_dofs(), ri, ci, v);
}

SparseMatrix MechanicalProblem::assembled_jacobian_serial(std::span<const double> state,
                                                          double) const {
  const std::size_t ne = mesh_.num_elements();
  std::vector<ElemStiffness> local(ne);
  auto mat = [this](std::size_t e) -> const NeoHookean& {
    return materials_[mesh_.element_block[e]];
  };
  for (std::size_t e = 0; e < ne; ++e) element_stiffness(mesh_, e, mat, state, local[e]);
  std::vector<std::size_t> ri, ci;
  std::vector<double> v;
  scatter_stiffness(mesh_, local, [&](std::size_t r, std::size_t c, double val) {
    ri.push_back(r);
    ci.push_back(c);
    v.push_back(val);
  });
  return SparseMatrix::from_triplets(num_dofs(), num_dofs(), ri, ci, v);
}

double MechanicalProblem::total_energy(std::span<const double> state) const {
  double w = 0.0;
  for (std::size_t e = 0; e < mesh_.num_elements(); ++e) {
    const auto& nodes = mesh_.elements[e];
    std::array<double, 8> u;
    for (std::size_t a = 0; a < 4; ++a) {
      u[2 * a] = state[nodes[a] * 2];
      u[2 * a + 1] = state[nodes[a] * 2 + 1];
    }
    const auto& m = materials_[mesh_.element_block[e]];
    for (std::size_t gp = 0; gp < 4; ++gp) {
      const auto g = q1::geom(mesh_, e, gp);
      w += m.energy(deformation_gradient(g.grad_x, u)) * g.jxw;
    }
  }
  return w;
}

Vector MechanicalProblem::internal_force(std::span<const double> state) const {
  return assembled_residual_serial(state, 0.0);  // zero load at t = 0
}

}  // namespace plrom::fom
