#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace ifem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

// Implicit interface description: the interface is the zero set of phi, the
// region phi < 0 is the minus side (enclosed subdomain) and phi > 0 the plus
// side. The gradient is required; the Hessian (dxx, dxy, dyy) is optional and
// falls back to differencing the gradient where needed.
struct LevelSet {
  std::function<double(Vec2)> phi;
  std::function<Vec2(Vec2)> grad;
  std::function<std::array<double, 3>(Vec2)> hess;
};

// phi(x1,x2) = 9/4 (x1^2+x2^2)^2 - 2 x1 (x1^2+x2^2) + 3 x2^2.
// Closed curve with a cusp at the origin, enclosed region on the right.
LevelSet waterdrop_levelset();
LevelSet circle_levelset(Vec2 center, double radius);
// Signed distance to the line through `point` with unit `normal` (phi > 0 on
// the side the normal points to).
LevelSet halfplane_levelset(Vec2 point, Vec2 normal);

// Root of phi along the segment [p, q]. Requires phi(p) and phi(q) of strict
// opposite sign; throws std::invalid_argument otherwise. Secant iteration
// with a bisection safeguard; the result satisfies
// |phi(x)| <= 1e-12 * max(1, |phi(p)|, |phi(q)|).
Vec2 edge_intersection(const LevelSet& ls, Vec2 p, Vec2 q);

struct ClosestPoint {
  Vec2 point;
  double distance = 0.0;  // unsigned distance |x - point|
  bool converged = false; // both residual and angle test met
  int iterations = 0;
};

// Foot point of x on the zero level set: |phi(point)| <= 1e-10 and the offset
// x - point is parallel to grad phi(point) to within 1e-6 rad. Near gradient
// degeneracies (e.g. a cusp) a marching fallback returns the best point found
// with converged = false; its distance is still accurate to ~1e-10.
ClosestPoint closest_point_on_interface(const LevelSet& ls, Vec2 x);

// Distance to the interface with the sign of phi (negative inside the minus
// region).
double signed_distance(const LevelSet& ls, Vec2 x);

}  // namespace ifem
