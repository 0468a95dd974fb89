#include "ifem/quadrature.hpp"

#include <stdexcept>

namespace ifem {

SegmentQuadrature segment_quadrature(Vec2 p, Vec2 q, int order) {
  // Gauss-Legendre abscissae/weights on [-1, 1]
  static const std::array<std::vector<double>, 6> xs = {{
      {},
      {0.0},
      {-0.5773502691896257, 0.5773502691896257},
      {-0.7745966692414834, 0.0, 0.7745966692414834},
      {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
      {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
       0.9061798459386640},
  }};
  static const std::array<std::vector<double>, 6> ws = {{
      {},
      {2.0},
      {1.0, 1.0},
      {0.5555555555555556, 0.8888888888888889, 0.5555555555555556},
      {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538},
      {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
       0.2369268850561891},
  }};
  if (order < 1 || order > 5)
    throw std::invalid_argument("segment_quadrature: order must be in 1..5");
  const double len = dist(p, q);
  SegmentQuadrature sq;
  sq.points.reserve(order);
  sq.weights.reserve(order);
  const Vec2 mid = 0.5 * (p + q);
  const Vec2 half = 0.5 * (q - p);
  for (int k = 0; k < order; ++k) {
    const double t = xs[order][k];
    sq.points.push_back({mid.x + t * half.x, mid.y + t * half.y});
    sq.weights.push_back(0.5 * len * ws[order][k]);
  }
  return sq;
}

namespace {

TriangleRule make_rule(int degree) {
  TriangleRule r;
  r.degree = degree;
  auto add3 = [&](double a, double w) {
    // permutations of (a, a, 1-2a)
    const double c = 1.0 - 2.0 * a;
    r.barycentric.push_back({c, a, a});
    r.barycentric.push_back({a, c, a});
    r.barycentric.push_back({a, a, c});
    r.weights.insert(r.weights.end(), 3, w);
  };
  auto add6 = [&](double a, double b, double w) {
    const double c = 1.0 - a - b;
    r.barycentric.push_back({a, b, c});
    r.barycentric.push_back({a, c, b});
    r.barycentric.push_back({b, a, c});
    r.barycentric.push_back({b, c, a});
    r.barycentric.push_back({c, a, b});
    r.barycentric.push_back({c, b, a});
    r.weights.insert(r.weights.end(), 6, w);
  };
  switch (degree) {
    case 1:
      r.barycentric.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(1.0);
      break;
    case 2:
      add3(1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      add3(0.445948490915965, 0.223381589678011);
      add3(0.091576213509771, 0.109951743655322);
      break;
    case 5:
      r.barycentric.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.225);
      add3(0.470142064105115, 0.132394152788506);
      add3(0.101286507323456, 0.125939180544827);
      break;
    case 6:
      add3(0.063089014491502, 0.050844906370207);
      add3(0.249286745170910, 0.116786275726379);
      add6(0.310352451033785, 0.053145049844816, 0.082851075618374);
      break;
    default:
      throw std::invalid_argument("triangle_rule: unsupported degree");
  }
  return r;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const TriangleRule r1 = make_rule(1);
  static const TriangleRule r2 = make_rule(2);
  static const TriangleRule r4 = make_rule(4);
  static const TriangleRule r5 = make_rule(5);
  static const TriangleRule r6 = make_rule(6);
  if (degree <= 1) return r1;
  if (degree <= 2) return r2;
  if (degree <= 4) return r4;
  if (degree <= 5) return r5;
  if (degree <= 6) return r6;
  throw std::invalid_argument("triangle_rule: degree > 6 not available");
}

}  // namespace ifem
