#pragma once

// Manufactured benchmark problems on the waterdrop interface. Both cases share
// the same state, adjoint, and data construction; they differ in the exact
// control, the control bounds, and the shift entering the projection rule.
// Every field is analytic, so a finite-difference validation gate can check
// the whole data set for internal consistency before any run trusts it.

#include <functional>
#include <string>

#include "ifem/control.hpp"
#include "ifem/geometry.hpp"

namespace ifem {

// f(x, side): side is +1 outside the interface, -1 inside.
using SideFn = std::function<double(Vec2, int)>;
using SideGrad = std::function<Vec2(Vec2, int)>;

struct ManufacturedCase {
  int id = 1;
  bool constrained = false;
  double alpha = 1.0;
  double beta_plus = 10.0;
  double beta_minus = 1.0;
  Bounds bounds;
  LevelSet levelset;

  SideFn exact_state;
  SideGrad exact_state_grad;
  SideFn exact_adjoint;
  SideGrad exact_adjoint_grad;
  std::function<double(Vec2)> exact_control;   // on the interface
  std::function<double(Vec2)> control_shift;   // shift in the projection rule

  SideFn rhs_f;
  SideFn tracking_target;                      // desired state
  std::function<double(Vec2)> neumann_data;    // fixed part of the flux jump
  std::function<double(Vec2)> dirichlet_data;  // outer boundary values
};

// id 1: zero optimal control (inactive bounds when constrained).
// id 2: optimal control max(0, sin(2 pi x)) with bounds [0, 1] when
// constrained, shift sin(2 pi x); unconstrained it degenerates to the shift.
// Defaults: case 1 unconstrained, case 2 constrained.
ManufacturedCase get_case(int id, bool constrained, double beta_plus = 10.0,
                          double beta_minus = 1.0, double alpha = 1.0);
ManufacturedCase get_case(int id);

// Points on the exact interface found by casting rays from an interior anchor.
std::vector<Vec2> sample_interface_points(const LevelSet& ls, int count);

// Finite-difference self-consistency gate. Verifies, at sampled points, that
// the volume data match the exact fields (fourth-order Laplacians), that
// state and adjoint are continuous across the interface with the required
// flux jumps, and that the exact control satisfies the projection identity.
// Throws with a diagnostic on the first violated check.
void validate_case(const ManufacturedCase& mcase);

}  // namespace ifem
