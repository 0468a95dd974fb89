#pragma once

// Discrete optimal-control machinery: one-shot state and adjoint solves for a
// given interface control, the tracking cost, the reduced gradient, and the
// projected fixed-point iteration on the optimality condition.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ifem/assembly.hpp"
#include "ifem/cases.hpp"
#include "ifem/control.hpp"
#include "ifem/solver.hpp"

namespace ifem {

// Discrete state: nodal coefficients plus the flux-jump enrichment that was
// active when the solve happened (empty when enrichment is disabled).
struct StateField {
  std::vector<double> nodal;
  EnrichmentField enrichment;
};

// Everything fixed for one (case, mesh) pair. Factorizations and fixed loads
// are computed once; repeated solves reuse them.
struct ProblemSetup {
  ManufacturedCase mcase;
  Mesh mesh;
  Classification cls;
  InterfaceMesh interface;
  FeSpace space;
  bool enrichment_on = true;

  EnrichmentAnchors anchors;  // closest-point data reused by every enrichment build

  SparseCSR stiffness;
  SparseCSR mass;
  DirichletSystem dirichlet;
  std::unique_ptr<LinearSolver> solver;

  std::vector<double> dirichlet_values;  // state boundary data at nodes
  std::vector<double> zero_values;
  std::vector<double> load_f;            // (f, v)
  std::vector<double> load_neumann;      // <g_N, v>
  std::vector<double> load_target;       // (y_d, v)

  // warm starts shared by consecutive solves
  mutable std::vector<double> state_warm;
  mutable std::vector<double> adjoint_warm;

  ProblemSetup() = default;
  ProblemSetup(const ProblemSetup&) = delete;
  ProblemSetup& operator=(const ProblemSetup&) = delete;
};

std::unique_ptr<ProblemSetup> make_setup(const ManufacturedCase& mcase, int n,
                                         const SolverConfig& solver_cfg = {},
                                         bool enrichment_on = true,
                                         SpaceVariant variant = SpaceVariant::Conforming);

// State solve for a piecewise-constant control (one value per interface
// segment) or for a pointwise control function.
SolveReport solve_state(const ProblemSetup& setup, const std::vector<double>& control,
                        StateField& state);
SolveReport solve_state(const ProblemSetup& setup, const std::function<double(Vec2)>& control,
                        StateField& state);

// Adjoint solve for a given discrete state (homogeneous boundary values).
SolveReport solve_adjoint(const ProblemSetup& setup, const StateField& state,
                          std::vector<double>& adjoint);

// Evaluates the nodal-plus-enrichment state (or a plain nodal field) at a
// point; side_hint as in evaluate_local.
double evaluate_state(const ProblemSetup& setup, const StateField& state, Vec2 x,
                      int side_hint = 0);
double evaluate_nodal(const ProblemSetup& setup, const std::vector<double>& coeff, Vec2 x,
                      int side_hint = 0);
// Value of a nodal field on an interface segment midpoint (chord trace).
double chord_value(const ProblemSetup& setup, const std::vector<double>& coeff, int segment);

// Tracking cost 1/2 ||y_h - y_d||^2 + alpha/2 ||u - shift||^2 on the polyline.
double evaluate_cost(const ProblemSetup& setup, const StateField& state,
                     const std::vector<double>& control);

// Reduced gradient per segment: alpha (u_s - shift(m_s)) + p_h(m_s).
std::vector<double> reduced_gradient(const ProblemSetup& setup,
                                     const std::vector<double>& control,
                                     const std::vector<double>& adjoint);

struct FixedPointOptions {
  int max_iterations = 500;
  double abs_tolerance = 1e-15;
  double rel_tolerance = 1e-14;
  // update through midpoint values of the projection formula (the default) or
  // keep the control as a pointwise function of the adjoint until convergence
  bool variational = false;
  std::string log_path;  // optional per-iteration CSV (k,change_norm,cost)
};

struct IterationRecord {
  int k = 0;
  double change_norm = 0.0;
  double cost = 0.0;
};

struct FixedPointResult {
  std::vector<double> control;  // per segment (midpoint samples in variational mode)
  StateField state;
  std::vector<double> adjoint;
  int iterations = 0;
  double final_change = 0.0;
  double cost = 0.0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

FixedPointResult fixed_point_solve(const ProblemSetup& setup,
                                   const FixedPointOptions& opts = {});

}  // namespace ifem
