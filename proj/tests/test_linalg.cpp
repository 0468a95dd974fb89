#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ifem/linalg.hpp"

using namespace ifem;

TEST_CASE("lu_solve_small: identity returns the right-hand side") {
  double A[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  double b[3] = {3.5, -2.0, 7.25};
  REQUIRE(lu_solve_small(3, A, 1, b));
  CHECK(b[0] == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(b[2] == doctest::Approx(7.25).epsilon(1e-14));
}

TEST_CASE("lu_solve_small: 3x3 Hilbert with row-sum right-hand side") {
  // b = H * (1,1,1), so the solution is exactly (1,1,1)
  double A[9] = {1.0,       1.0 / 2.0, 1.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0,
                 1.0 / 4.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0};
  double b[3] = {1.0 + 1.0 / 2.0 + 1.0 / 3.0, 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 4.0,
                 1.0 / 3.0 + 1.0 / 4.0 + 1.0 / 5.0};
  REQUIRE(lu_solve_small(3, A, 1, b));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(b[i] - 1.0) <= 1e-10);
}

TEST_CASE("lu_solve_small: 3x3 Hilbert inverse first column") {
  // The inverse of the 3x3 Hilbert matrix has integer entries; its first
  // column is (9, -36, 30).
  double A[9] = {1.0,       1.0 / 2.0, 1.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0,
                 1.0 / 4.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0};
  double b[3] = {1.0, 0.0, 0.0};
  REQUIRE(lu_solve_small(3, A, 1, b));
  CHECK(b[0] == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(b[1] == doctest::Approx(-36.0).epsilon(1e-9));
  CHECK(b[2] == doctest::Approx(30.0).epsilon(1e-9));
}

TEST_CASE("lu_solve_small: singular matrix is rejected") {
  double A[4] = {1.0, 2.0, 2.0, 4.0};
  double b[2] = {1.0, 1.0};
  CHECK_FALSE(lu_solve_small(2, A, 1, b));
}

TEST_CASE("lu_solve_small: multiple right-hand sides") {
  double A[4] = {2.0, 1.0, 1.0, 3.0};  // det = 5
  // columns of the identity -> the two columns of the inverse
  double B[4] = {1.0, 0.0, 0.0, 1.0};
  REQUIRE(lu_solve_small(2, A, 2, B));
  CHECK(B[0] == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(B[1] == doctest::Approx(-0.2).epsilon(1e-13));
  CHECK(B[2] == doctest::Approx(-0.2).epsilon(1e-13));
  CHECK(B[3] == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("csr_from_triplets: duplicates merge, columns sort") {
  std::vector<Triplet> t = {{1, 2, 1.0}, {0, 0, 2.0}, {1, 0, 3.0},
                            {1, 2, 0.5}, {0, 0, -1.0}};
  const SparseCSR a = csr_from_triplets(2, 3, t);
  CHECK(a.rows == 2);
  CHECK(a.cols == 3);
  REQUIRE(a.row_ptr == std::vector<int>({0, 1, 3}));
  REQUIRE(a.col_idx == std::vector<int>({0, 0, 2}));
  CHECK(a.values[0] == doctest::Approx(1.0));  // 2 - 1
  CHECK(a.values[1] == doctest::Approx(3.0));
  CHECK(a.values[2] == doctest::Approx(1.5));  // 1 + 0.5
}

TEST_CASE("spmv matches a dense multiply on a random 50x50 matrix") {
  const int n = 50;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uv(-1.0, 1.0);
  std::uniform_int_distribution<int> ui(0, n - 1);
  std::vector<double> dense(n * n, 0.0);
  std::vector<Triplet> trip;
  for (int k = 0; k < 600; ++k) {
    const int i = ui(rng), j = ui(rng);
    const double v = uv(rng);
    dense[i * n + j] += v;
    trip.push_back({i, j, v});
  }
  const SparseCSR a = csr_from_triplets(n, n, trip);
  std::vector<double> x(n), y_ref(n, 0.0);
  for (double& v : x) v = uv(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y_ref[i] += dense[i * n + j] * x[j];
  const std::vector<double> y = spmv(a, x);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num = std::max(num, std::abs(y[i] - y_ref[i]));
    den = std::max(den, std::abs(y_ref[i]));
  }
  CHECK(num <= 1e-13 * std::max(1.0, den));

  // strictly increasing column indices per row
  for (int i = 0; i < a.rows; ++i)
    for (int k = a.row_ptr[i] + 1; k < a.row_ptr[i + 1]; ++k)
      CHECK(a.col_idx[k - 1] < a.col_idx[k]);
}

TEST_CASE("spmv is linear") {
  std::vector<Triplet> t = {{0, 0, 2.0}, {0, 2, -1.0}, {1, 1, 4.0}, {2, 0, 1.0}, {2, 2, 3.0}};
  const SparseCSR a = csr_from_triplets(3, 3, t);
  const std::vector<double> x = {1.0, -2.0, 0.5}, y = {0.3, 0.7, -1.1};
  const double al = 1.7, be = -0.4;
  std::vector<double> z(3);
  for (int i = 0; i < 3; ++i) z[i] = al * x[i] + be * y[i];
  const std::vector<double> lhs = spmv(a, z);
  const std::vector<double> ax = spmv(a, x), ay = spmv(a, y);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(lhs[i] - (al * ax[i] + be * ay[i])) <= 1e-13);
}
