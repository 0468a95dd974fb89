#pragma once

// Piecewise-constant controls on the interface polyline and the pointwise
// box-projection rule shared by the optimizer and the postprocessing step.

#include <functional>
#include <string>
#include <vector>

#include "ifem/mesh.hpp"

namespace ifem {

struct Bounds {
  bool active = false;
  double lower = 0.0;
  double upper = 0.0;
};

inline double project_box(double v, const Bounds& b) {
  if (!b.active) return v;
  return v < b.lower ? b.lower : (v > b.upper ? b.upper : v);
}

// One value per segment, sampled at the segment midpoint.
std::vector<double> midpoint_interpolate(const InterfaceMesh& im,
                                         const std::function<double(Vec2)>& f);

// One value per segment, the segment mean of f (L2 projection onto piecewise
// constants), via Gauss quadrature of the given order.
std::vector<double> l2_project_segments(const InterfaceMesh& im,
                                        const std::function<double(Vec2)>& f, int order = 3);

// The continuous control recovered from an adjoint evaluator:
// x -> project(shift(x) - p(x) / alpha). Both inputs are captured by value.
std::function<double(Vec2)> postprocess_control(double alpha, const Bounds& bounds,
                                                std::function<double(Vec2)> shift,
                                                std::function<double(Vec2)> adjoint);

// CSV with one row per segment: segment_index,midpoint_x,midpoint_y,value.
void write_control_csv(const std::string& path, const InterfaceMesh& im,
                       const std::vector<double>& values);

}  // namespace ifem
