#pragma once

#include <memory>

#include "plrom/fom/material.hpp"
#include "plrom/fom/mesh.hpp"
#include "plrom/fom/problem.hpp"

namespace plrom::fom {

struct MechanicalMaterial {
  double youngs;
  double poisson;
};

/// Plane-strain Neohookean solid on a structured quad mesh. Dofs are
/// (ux, uy) per node, interleaved. The left edge is clamped (one DBC block
/// per component) and a dead pressure traction p(t) = pressure_rate * t
/// acts upward on the bottom edge.
class MechanicalProblem : public FomProblem {
 public:
  MechanicalProblem(QuadMesh mesh, std::vector<MechanicalMaterial> per_block,
                    double pressure_rate);

  const DofLayout& layout() const override { return layout_; }
  const std::map<std::string, double>& parameters() const override { return params_; }
  Vector dirichlet_values(double t) const override;
  Vector assembled_residual(std::span<const double> state, double t) const override;
  SparseMatrix assembled_jacobian(std::span<const double> state, double t) const override;

  /// Serial reference assembly, kept for the determinism tests and bench.
  Vector assembled_residual_serial(std::span<const double> state, double t) const;
  SparseMatrix assembled_jacobian_serial(std::span<const double> state, double t) const;

  /// Stored strain energy of the whole body at the given displacements.
  double total_energy(std::span<const double> state) const;
  /// Internal nodal force (gradient of total_energy); no external loads.
  Vector internal_force(std::span<const double> state) const;

  const QuadMesh& mesh() const { return mesh_; }
  std::size_t dof(std::size_t node, std::size_t comp) const { return node * 2 + comp; }

 private:
  QuadMesh mesh_;
  std::vector<NeoHookean> materials_;
  double pressure_rate_;
  DofLayout layout_;
  std::map<std::string, double> params_;
};

}  // namespace plrom::fom
