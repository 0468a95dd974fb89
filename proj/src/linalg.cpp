#include "ifem/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ifem {

bool lu_solve_small(int n, double* A, int nrhs, double* B) {
  if (n < 1 || n > 8) throw std::invalid_argument("lu_solve_small: n must be in 1..8");
  double amax = 0.0;
  for (int i = 0; i < n * n; ++i) amax = std::max(amax, std::abs(A[i]));
  const double pivot_tol = 1e-14 * amax;

  std::array<int, 8> perm;
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A[i * n + k]) > std::abs(A[p * n + k])) p = i;
    if (std::abs(A[p * n + k]) <= pivot_tol) return false;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[p * n + j]);
      for (int j = 0; j < nrhs; ++j) std::swap(B[k * nrhs + j], B[p * nrhs + j]);
    }
    const double inv = 1.0 / A[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double l = A[i * n + k] * inv;
      A[i * n + k] = l;
      for (int j = k + 1; j < n; ++j) A[i * n + j] -= l * A[k * n + j];
      for (int j = 0; j < nrhs; ++j) B[i * nrhs + j] -= l * B[k * nrhs + j];
    }
  }
  for (int j = 0; j < nrhs; ++j) {
    for (int i = n - 1; i >= 0; --i) {
      double s = B[i * nrhs + j];
      for (int k2 = i + 1; k2 < n; ++k2) s -= A[i * n + k2] * B[k2 * nrhs + j];
      B[i * nrhs + j] = s / A[i * n + i];
    }
  }
  return true;
}

SparseCSR csr_from_triplets(int rows, int cols, std::vector<Triplet> t) {
  std::stable_sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseCSR A;
  A.rows = rows;
  A.cols = cols;
  A.row_ptr.assign(rows + 1, 0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k].row < 0 || t[k].row >= rows || t[k].col < 0 || t[k].col >= cols)
      throw std::out_of_range("csr_from_triplets: index out of range");
    if (k > 0 && t[k].row == t[k - 1].row && t[k].col == t[k - 1].col) {
      A.values.back() += t[k].value;
    } else {
      A.col_idx.push_back(t[k].col);
      A.values.push_back(t[k].value);
      ++A.row_ptr[t[k].row + 1];
    }
  }
  std::partial_sum(A.row_ptr.begin(), A.row_ptr.end(), A.row_ptr.begin());
  return A;
}

void spmv(const SparseCSR& A, const double* x, double* y) {
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) s += A.values[k] * x[A.col_idx[k]];
    y[i] = s;
  }
}

void spmv(const SparseCSR& A, const std::vector<double>& x, std::vector<double>& y) {
  if (static_cast<int>(x.size()) != A.cols)
    throw std::invalid_argument("spmv: dimension mismatch");
  y.resize(A.rows);
  spmv(A, x.data(), y.data());
}

std::vector<double> spmv(const SparseCSR& A, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != A.cols)
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(A.rows);
  spmv(A, x.data(), y.data());
  return y;
}

}  // namespace ifem
