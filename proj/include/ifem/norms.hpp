#pragma once

// Discretization error measures against the manufactured exact fields. Volume
// norms integrate piecewise (each integration triangle knows its side, so the
// matching one-sided exact formula is used); the maximum norms additionally
// sample every integration-triangle corner (mesh nodes and cut points), where
// piecewise-linear errors peak. Control errors live on the interface polyline, with the
// exact control read at the closest point of the true interface.

#include <functional>

#include "ifem/optimize.hpp"

namespace ifem {

struct ErrorNorms {
  double y_l2 = 0.0;
  double p_l2 = 0.0;
  double u_l2 = 0.0;
  double y_linf = 0.0;
  double p_linf = 0.0;
  double u_linf = 0.0;
};

// `control` is the (typically postprocessed) control as a function on the
// interface polyline.
ErrorNorms error_norms(const ProblemSetup& setup, const StateField& state,
                       const std::vector<double>& adjoint,
                       const std::function<double(Vec2)>& control);

// log(e_coarse / e_fine) / log(h_coarse / h_fine)
double convergence_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

}  // namespace ifem
