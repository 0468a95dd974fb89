#include <doctest.h>

#include <stdexcept>

#include "ifem/norms.hpp"

using namespace ifem;

TEST_CASE("convergence order reproduces the log-ratio formula") {
  // halving h while quartering the error is exactly second order
  CHECK(convergence_order(4.0e-3, 1.0e-3, 0.125, 0.0625) == doctest::Approx(2.0).epsilon(1e-14));
  // a published pair: errors 1.9091e-2 -> 4.6808e-3 over one refinement
  CHECK(convergence_order(1.9091e-2, 4.6808e-3, 2.0 / 32, 2.0 / 64) ==
        doctest::Approx(2.0280).epsilon(5e-4));
  // first order
  CHECK(convergence_order(2.0e-2, 1.0e-2, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("convergence order rejects degenerate inputs") {
  CHECK_THROWS_AS((void)convergence_order(0.0, 1e-3, 0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS((void)convergence_order(1e-3, -1e-3, 0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS((void)convergence_order(1e-3, 1e-4, 0.25, 0.25), std::invalid_argument);
  CHECK_THROWS_AS((void)convergence_order(1e-3, 1e-4, 0.25, 0.5), std::invalid_argument);
}
