#include <doctest.h>

#include <cmath>

#include "ifem/quadrature.hpp"

using namespace ifem;

namespace {

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

// Exact integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1).
double ref_monomial(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST_CASE("segment quadrature: weights sum to the length, Gauss exactness") {
  const Vec2 p{0.2, -0.3}, q{1.1, 0.7};
  const double L = dist(p, q);
  for (int order = 1; order <= 5; ++order) {
    const SegmentQuadrature quad = segment_quadrature(p, q, order);
    REQUIRE(static_cast<int>(quad.points.size()) == order);
    double wsum = 0.0;
    for (double w : quad.weights) wsum += w;
    CHECK(wsum == doctest::Approx(L).epsilon(1e-14));

    // t^k along the segment is integrated exactly for k <= 2*order - 1
    const Vec2 d = q - p;
    const double dd = dot(d, d);
    for (int k = 0; k <= 2 * order - 1; ++k) {
      double got = 0.0;
      for (std::size_t i = 0; i < quad.points.size(); ++i) {
        const double t = dot(quad.points[i] - p, d) / dd;
        got += quad.weights[i] * std::pow(t, k);
      }
      CHECK(std::abs(got - L / (k + 1)) <= 1e-13 * L);
    }
  }
}

TEST_CASE("triangle rules: weights sum to one, barycentric coordinates valid") {
  for (int degree : {1, 2, 4, 5, 6}) {
    const TriangleRule& rule = triangle_rule(degree);
    CHECK(rule.degree >= degree);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& b : rule.barycentric) {
      CHECK(b[0] + b[1] + b[2] == doctest::Approx(1.0).epsilon(1e-13));
      for (double bi : b) {
        CHECK(bi >= -1e-14);
        CHECK(bi <= 1.0 + 1e-14);
      }
    }
  }
}

TEST_CASE("triangle rules: monomial exactness on the reference triangle") {
  const std::array<Vec2, 3> tri = {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
  const double area = triangle_area(tri);
  CHECK(area == doctest::Approx(0.5));
  for (int degree : {1, 2, 4, 5, 6}) {
    const TriangleRule& rule = triangle_rule(degree);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double got = 0.0;
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
          const Vec2 x = bary_point(tri, rule.barycentric[q]);
          got += rule.weights[q] * area * std::pow(x.x, a) * std::pow(x.y, b);
        }
        CHECK(std::abs(got - ref_monomial(a, b)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("triangle rules: affine invariance on a mapped triangle") {
  // integrating a linear function over any triangle gives area * value(centroid)
  const std::array<Vec2, 3> tri = {Vec2{-0.3, 0.4}, Vec2{0.9, 0.1}, Vec2{0.2, 1.2}};
  const double area = triangle_area(tri);
  const Vec2 centroid{(tri[0].x + tri[1].x + tri[2].x) / 3.0,
                      (tri[0].y + tri[1].y + tri[2].y) / 3.0};
  auto f = [](Vec2 x) { return 2.0 - 0.7 * x.x + 1.3 * x.y; };
  for (int degree : {1, 2, 4, 5, 6}) {
    const TriangleRule& rule = triangle_rule(degree);
    double got = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q)
      got += rule.weights[q] * area * f(bary_point(tri, rule.barycentric[q]));
    CHECK(got == doctest::Approx(area * f(centroid)).epsilon(1e-13));
  }
}
