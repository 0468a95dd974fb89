#include "ifem/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ifem {

SolveReport cg_solve(const SparseCSR& a, const std::vector<double>& b, std::vector<double>& x,
                     const SolverConfig& cfg) {
  const int n = a.rows;
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("cg_solve: size mismatch");
  x.resize(n, 0.0);

  std::vector<double> inv_diag(n, 1.0);
  if (cfg.preconditioner == Preconditioner::Jacobi) {
    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
        if (a.col_idx[k] == i) d = a.values[k];
      if (!(d > 0.0)) throw std::runtime_error("cg_solve: nonpositive diagonal entry");
      inv_diag[i] = 1.0 / d;
    }
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  spmv(a, x, ap);
  double bnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    r[i] = b[i] - ap[i];
    bnorm += b[i] * b[i];
  }
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  auto rnorm = [&] {
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s);
  };

  SolveReport rep;
  double rn = rnorm();
  if (rn <= cfg.rel_tolerance * bnorm) {
    rep.relative_residual = rn / bnorm;
    return rep;
  }

  double rz = 0.0;
  for (int i = 0; i < n; ++i) {
    z[i] = inv_diag[i] * r[i];
    p[i] = z[i];
    rz += r[i] * z[i];
  }

  const int max_it = cfg.max_iterations > 0 ? cfg.max_iterations : 10 * n;
  for (int it = 1; it <= max_it; ++it) {
    spmv(a, p, ap);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0))
      throw std::runtime_error("cg_solve: matrix is not positive definite (p'Ap = " +
                               std::to_string(pap) + ")");
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    rn = rnorm();
    rep.iterations = it;
    if (rn <= cfg.rel_tolerance * bnorm) break;
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rep.relative_residual = rn / bnorm;
  return rep;
}

BandedCholesky::BandedCholesky(const SparseCSR& a, std::size_t memory_limit_bytes) {
  if (a.rows != a.cols) throw std::invalid_argument("BandedCholesky: square matrix required");
  n_ = a.rows;
  bw_ = 0;
  for (int i = 0; i < n_; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      bw_ = std::max(bw_, std::abs(i - a.col_idx[k]));

  const std::size_t need = static_cast<std::size_t>(n_) * (bw_ + 1) * sizeof(double);
  if (need > memory_limit_bytes)
    throw std::runtime_error("BandedCholesky: band storage of " + std::to_string(need) +
                             " bytes exceeds the limit; use the iterative solver");

  // band_[i * (bw_+1) + (bw_ - (i - j))] holds entry (i, j), j in [i-bw_, i]
  band_.assign(static_cast<std::size_t>(n_) * (bw_ + 1), 0.0);
  auto at = [&](int i, int j) -> double& {
    return band_[static_cast<std::size_t>(i) * (bw_ + 1) + (bw_ - (i - j))];
  };
  for (int i = 0; i < n_; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (a.col_idx[k] <= i) at(i, a.col_idx[k]) = a.values[k];

  for (int j = 0; j < n_; ++j) {
    double d = at(j, j);
    for (int k = std::max(0, j - bw_); k < j; ++k) {
      const double l = at(j, k);
      d -= l * l;
    }
    if (!(d > 0.0))
      throw std::runtime_error("BandedCholesky: matrix is not positive definite at row " +
                               std::to_string(j));
    const double dj = std::sqrt(d);
    at(j, j) = dj;
    const int iend = std::min(n_ - 1, j + bw_);
    for (int i = j + 1; i <= iend; ++i) {
      double s = at(i, j);
      const int kbeg = std::max(0, std::max(i - bw_, j - bw_));
      for (int k = kbeg; k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / dj;
    }
  }
}

void BandedCholesky::solve(const std::vector<double>& b, std::vector<double>& x) const {
  if (static_cast<int>(b.size()) != n_)
    throw std::invalid_argument("BandedCholesky::solve: size mismatch");
  x = b;
  const int w = bw_ + 1;
  auto at = [&](int i, int j) { return band_[static_cast<std::size_t>(i) * w + (bw_ - (i - j))]; };
  for (int i = 0; i < n_; ++i) {
    double s = x[i];
    for (int j = std::max(0, i - bw_); j < i; ++j) s -= at(i, j) * x[j];
    x[i] = s / at(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    const int jend = std::min(n_ - 1, i + bw_);
    for (int j = i + 1; j <= jend; ++j) s -= at(j, i) * x[j];
    x[i] = s / at(i, i);
  }
}

LinearSolver::LinearSolver(const SparseCSR& a, const SolverConfig& cfg) : a_(&a), cfg_(cfg) {
  if (cfg_.method == SolverMethod::Direct) chol_ = std::make_unique<BandedCholesky>(a);
}

SolveReport LinearSolver::solve(const std::vector<double>& b, std::vector<double>& x) const {
  if (cfg_.method == SolverMethod::Direct) {
    chol_->solve(b, x);
    return {0, 0.0};
  }
  return cg_solve(*a_, b, x, cfg_);
}

DirichletSystem build_dirichlet_system(const SparseCSR& a, const std::vector<int>& boundary,
                                       int n_dofs) {
  DirichletSystem sys;
  sys.boundary = boundary;
  sys.free_index.assign(n_dofs, 0);
  for (int bnode : boundary) sys.free_index[bnode] = -1;
  for (int i = 0; i < n_dofs; ++i) {
    if (sys.free_index[i] == 0) {
      sys.free_index[i] = static_cast<int>(sys.free_nodes.size());
      sys.free_nodes.push_back(i);
    }
  }

  std::vector<Triplet> ff, fb;
  for (int i = 0; i < n_dofs; ++i) {
    const int fi = sys.free_index[i];
    if (fi < 0) continue;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int j = a.col_idx[k];
      const int fj = sys.free_index[j];
      if (fj >= 0)
        ff.push_back({fi, fj, a.values[k]});
      else
        fb.push_back({fi, j, a.values[k]});
    }
  }
  const int nf = static_cast<int>(sys.free_nodes.size());
  sys.a_ff = csr_from_triplets(nf, nf, ff);
  sys.a_fb = csr_from_triplets(nf, n_dofs, fb);
  return sys;
}

SolveReport dirichlet_solve(const DirichletSystem& sys, const LinearSolver& solver,
                            const std::vector<double>& rhs, const std::vector<double>& g,
                            std::vector<double>& x) {
  const int nf = static_cast<int>(sys.free_nodes.size());
  std::vector<double> bf(nf);
  std::vector<double> couple(nf);
  spmv(sys.a_fb, g, couple);
  for (int k = 0; k < nf; ++k) bf[k] = rhs[sys.free_nodes[k]] - couple[k];

  std::vector<double> xf(nf, 0.0);
  if (static_cast<int>(x.size()) == static_cast<int>(sys.free_index.size()))
    for (int k = 0; k < nf; ++k) xf[k] = x[sys.free_nodes[k]];  // warm start

  const SolveReport rep = solver.solve(bf, xf);

  x.assign(sys.free_index.size(), 0.0);
  for (int bnode : sys.boundary) x[bnode] = g[bnode];
  for (std::size_t i = 0; i < sys.free_index.size(); ++i)
    if (sys.free_index[i] >= 0) x[i] = xf[sys.free_index[i]];
  return rep;
}

}  // namespace ifem
