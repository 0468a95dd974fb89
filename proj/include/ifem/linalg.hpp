#pragma once

#include <vector>

namespace ifem {

// Solve A X = B for a tiny dense system (n <= 8) by partial-pivot LU.
// A is row-major n x n and is overwritten; B is row-major n x nrhs and is
// replaced by the solution. Returns false when a pivot falls below
// 1e-14 * max|A| (singular to working precision).
bool lu_solve_small(int n, double* A, int nrhs, double* B);

struct Triplet {
  int row;
  int col;
  double value;
};

struct SparseCSR {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;   // size rows + 1
  std::vector<int> col_idx;   // strictly increasing within each row
  std::vector<double> values;
  int nnz() const { return static_cast<int>(col_idx.size()); }
};

// Sort-and-merge assembly of duplicate triplets. Accumulation order is fixed
// by the (row, col, insertion) sort, so the result is deterministic.
SparseCSR csr_from_triplets(int rows, int cols, std::vector<Triplet> triplets);

void spmv(const SparseCSR& A, const double* x, double* y);
std::vector<double> spmv(const SparseCSR& A, const std::vector<double>& x);
void spmv(const SparseCSR& A, const std::vector<double>& x, std::vector<double>& y);

}  // namespace ifem
