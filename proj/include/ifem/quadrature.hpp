#pragma once

#include <array>
#include <vector>

#include "ifem/geometry.hpp"

namespace ifem {

struct SegmentQuadrature {
  std::vector<Vec2> points;
  std::vector<double> weights;  // sum equals the segment length
};

// Gauss-Legendre rule with `order` points (1..5) mapped to the segment [p,q];
// exact for polynomials of degree <= 2*order - 1 along the segment.
SegmentQuadrature segment_quadrature(Vec2 p, Vec2 q, int order);

struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;  // sum to 1; multiply by the triangle area
};

// Smallest available symmetric rule exact for the requested polynomial
// degree (available degrees: 1, 2, 4, 5, 6).
const TriangleRule& triangle_rule(int degree);

inline Vec2 bary_point(const std::array<Vec2, 3>& tri, const std::array<double, 3>& b) {
  return {b[0] * tri[0].x + b[1] * tri[1].x + b[2] * tri[2].x,
          b[0] * tri[0].y + b[1] * tri[1].y + b[2] * tri[2].y};
}

inline double triangle_area(const std::array<Vec2, 3>& t) {
  return 0.5 * cross(t[1] - t[0], t[2] - t[0]);
}

}  // namespace ifem
