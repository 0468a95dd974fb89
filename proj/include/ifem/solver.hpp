#pragma once

// Linear solvers for the symmetric positive definite reduced systems:
// Jacobi-preconditioned conjugate gradients (default) and an exact banded
// Cholesky factorization for runs that need solves at rounding accuracy.

#include <memory>
#include <vector>

#include "ifem/linalg.hpp"

namespace ifem {

enum class SolverMethod { Cg, Direct };
enum class Preconditioner { None, Jacobi };

struct SolverConfig {
  SolverMethod method = SolverMethod::Cg;
  double rel_tolerance = 1e-12;
  int max_iterations = -1;  // -1: ten times the system size
  Preconditioner preconditioner = Preconditioner::Jacobi;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
};

// x serves as the initial guess and receives the solution.
SolveReport cg_solve(const SparseCSR& a, const std::vector<double>& b, std::vector<double>& x,
                     const SolverConfig& cfg);

// Lower-band Cholesky factorization of an SPD matrix in CSR form.
class BandedCholesky {
 public:
  explicit BandedCholesky(const SparseCSR& a, std::size_t memory_limit_bytes = 1ull << 31);
  void solve(const std::vector<double>& b, std::vector<double>& x) const;
  int bandwidth() const { return bw_; }

 private:
  int n_ = 0;
  int bw_ = 0;
  std::vector<double> band_;  // row-major, bw_+1 entries per row, diagonal last
};

// Method-dispatching wrapper that caches the factorization.
class LinearSolver {
 public:
  LinearSolver(const SparseCSR& a, const SolverConfig& cfg);
  // x is the warm start for CG and receives the solution.
  SolveReport solve(const std::vector<double>& b, std::vector<double>& x) const;
  const SolverConfig& config() const { return cfg_; }

 private:
  const SparseCSR* a_;
  SolverConfig cfg_;
  std::unique_ptr<BandedCholesky> chol_;
};

// Dirichlet elimination: splits A into the free-free and free-boundary blocks
// for a given boundary node set.
struct DirichletSystem {
  std::vector<int> boundary;      // boundary node ids
  std::vector<int> free_nodes;    // interior node ids in ascending order
  std::vector<int> free_index;    // node id -> index into free_nodes, -1 on boundary
  SparseCSR a_ff;
  SparseCSR a_fb;
};

DirichletSystem build_dirichlet_system(const SparseCSR& a, const std::vector<int>& boundary,
                                       int n_dofs);

// Solves A x = rhs with x = g on the boundary. `x` enters as the warm start
// (its free part) and leaves as the full solution including boundary values.
SolveReport dirichlet_solve(const DirichletSystem& sys, const LinearSolver& solver,
                            const std::vector<double>& rhs, const std::vector<double>& g,
                            std::vector<double>& x);

}  // namespace ifem
