#pragma once

#include "plrom/fom/material.hpp"
#include "plrom/fom/mesh.hpp"
#include "plrom/fom/problem.hpp"

namespace plrom::fom {

struct ThermoMechanicalMaterial {
  double youngs;
  double poisson;
  double conductivity;   // isotropic k
  double expansion;      // alpha
  double ref_temperature;
};

/// Monolithically coupled quasi-static thermo-elasticity: plane-strain
/// Neohookean mechanics with a thermal deformation gradient
/// F_T = exp(alpha (T - T_ref)) I and steady-state heat conduction.
/// Dofs per node: (ux, uy, T), interleaved. Left edge: clamped, T held at
/// the initial temperature. Right edge: T ramped at `temp_rate` per unit
/// pseudo-time. Optional dead pressure load on the bottom edge.
class ThermoMechanicalProblem : public FomProblem {
 public:
  ThermoMechanicalProblem(QuadMesh mesh, std::vector<ThermoMechanicalMaterial> per_block,
                          double initial_temperature, double temp_rate,
                          double pressure_rate = 0.0);

  const DofLayout& layout() const override { return layout_; }
  const std::map<std::string, double>& parameters() const override { return params_; }
  Vector dirichlet_values(double t) const override;
  Vector assembled_residual(std::span<const double> state, double t) const override;
  SparseMatrix assembled_jacobian(std::span<const double> state, double t) const override;

  Vector assembled_residual_serial(std::span<const double> state, double t) const;

  /// Uniform-temperature state (the at-rest initial condition).
  Vector rest_state() const;

  /// Rest state with the Dirichlet values at `t` imposed.
  Vector initial_state(double t) const override;

  const QuadMesh& mesh() const { return mesh_; }
  std::size_t dof(std::size_t node, std::size_t comp) const { return node * 3 + comp; }
  std::size_t temp_dof(std::size_t node) const { return node * 3 + 2; }

 private:
  struct Local;
  template <bool WithJacobian>
  void assemble(std::span<const double> state, double t, bool parallel, Vector* r,
                std::vector<std::size_t>* ri, std::vector<std::size_t>* ci,
                std::vector<double>* vals) const;

  QuadMesh mesh_;
  std::vector<ThermoMechanicalMaterial> raw_materials_;
  std::vector<NeoHookean> materials_;
  double initial_temperature_;
  double temp_rate_;
  double pressure_rate_;
  DofLayout layout_;
  std::map<std::string, double> params_;
};

}  // namespace plrom::fom
