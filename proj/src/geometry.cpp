#include "ifem/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ifem {

LevelSet waterdrop_levelset() {
  LevelSet ls;
  ls.phi = [](Vec2 p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return 2.25 * r2 * r2 - 2.0 * p.x * r2 + 3.0 * p.y * p.y;
  };
  ls.grad = [](Vec2 p) -> Vec2 {
    const double r2 = p.x * p.x + p.y * p.y;
    return {9.0 * p.x * r2 - 2.0 * r2 - 4.0 * p.x * p.x,
            9.0 * p.y * r2 - 4.0 * p.x * p.y + 6.0 * p.y};
  };
  ls.hess = [](Vec2 p) -> std::array<double, 3> {
    return {27.0 * p.x * p.x - 12.0 * p.x + 9.0 * p.y * p.y,
            18.0 * p.x * p.y - 4.0 * p.y,
            9.0 * p.x * p.x - 4.0 * p.x + 27.0 * p.y * p.y + 6.0};
  };
  return ls;
}

LevelSet circle_levelset(Vec2 c, double r) {
  if (r <= 0.0) throw std::invalid_argument("circle_levelset: radius must be positive");
  LevelSet ls;
  ls.phi = [c, r](Vec2 p) {
    const double dx = p.x - c.x, dy = p.y - c.y;
    return dx * dx + dy * dy - r * r;
  };
  ls.grad = [c](Vec2 p) -> Vec2 { return {2.0 * (p.x - c.x), 2.0 * (p.y - c.y)}; };
  ls.hess = [](Vec2) -> std::array<double, 3> { return {2.0, 0.0, 2.0}; };
  return ls;
}

LevelSet halfplane_levelset(Vec2 point, Vec2 normal) {
  const double nn = norm(normal);
  if (nn <= 0.0) throw std::invalid_argument("halfplane_levelset: zero normal");
  const Vec2 n{normal.x / nn, normal.y / nn};
  LevelSet ls;
  ls.phi = [point, n](Vec2 p) { return dot(p - point, n); };
  ls.grad = [n](Vec2) { return n; };
  ls.hess = [](Vec2) -> std::array<double, 3> { return {0.0, 0.0, 0.0}; };
  return ls;
}

Vec2 edge_intersection(const LevelSet& ls, Vec2 p, Vec2 q) {
  double fa = ls.phi(p), fb = ls.phi(q);
  if (!(fa * fb < 0.0))
    throw std::invalid_argument("edge_intersection: endpoints must have opposite sign");
  const double tol = 1e-12 * std::max({1.0, std::abs(fa), std::abs(fb)});
  double a = 0.0, b = 1.0;
  auto at = [&](double t) { return Vec2{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}; };
  double t = a, ft = fa;
  for (int it = 0; it < 200; ++it) {
    // secant candidate, replaced by the midpoint when it leaves the bracket
    double ts = (std::abs(fb - fa) > 0.0) ? a - fa * (b - a) / (fb - fa) : 0.5 * (a + b);
    if (!(ts > a && ts < b)) ts = 0.5 * (a + b);
    t = ts;
    ft = ls.phi(at(t));
    if (std::abs(ft) <= tol || (b - a) < 1e-16) return at(t);
    if (fa * ft < 0.0) {
      b = t;
      fb = ft;
    } else {
      a = t;
      fa = ft;
    }
    // force a bisection step every few iterations to guarantee progress
    if (it % 4 == 3) {
      double tm = 0.5 * (a + b);
      double fm = ls.phi(at(tm));
      if (std::abs(fm) <= tol) return at(tm);
      if (fa * fm < 0.0) {
        b = tm;
        fb = fm;
      } else {
        a = tm;
        fa = fm;
      }
    }
  }
  return at(t);
}

namespace {

// Damped first-order Newton projection onto the zero set along the gradient.
bool project_to_zero(const LevelSet& ls, Vec2& y, double tol) {
  for (int it = 0; it < 80; ++it) {
    const double f = ls.phi(y);
    if (std::abs(f) <= tol) return true;
    const Vec2 g = ls.grad(y);
    const double g2 = dot(g, g);
    if (g2 < 1e-28) return false;
    const Vec2 full{f * g.x / g2, f * g.y / g2};
    double lambda = 1.0;
    Vec2 ynew = y;
    for (int k = 0; k < 50; ++k) {
      ynew = {y.x - lambda * full.x, y.y - lambda * full.y};
      if (std::abs(ls.phi(ynew)) < std::abs(f)) break;
      lambda *= 0.5;
    }
    y = ynew;
  }
  return std::abs(ls.phi(y)) <= tol;
}

// Marching fallback: slide along the curve from a seed, keeping the sample
// nearest to x. Handles gradient degeneracies (cusp) where the alternating
// Newton scheme stalls.
ClosestPoint march_search(const LevelSet& ls, Vec2 x, Vec2 seed, double tol) {
  Vec2 best = seed;
  double bestd = dist(x, seed);
  double step = std::max(0.25 * bestd, 1e-4);
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int dir : {-1, +1}) {
      Vec2 y = best;
      for (int k = 0; k < 6; ++k) {
        const Vec2 g = ls.grad(y);
        const double gn = norm(g);
        if (gn < 1e-14) break;
        Vec2 t = rot90({g.x / gn, g.y / gn});
        Vec2 cand{y.x + dir * step * t.x, y.y + dir * step * t.y};
        if (!project_to_zero(ls, cand, tol)) break;
        const double d = dist(x, cand);
        if (d < bestd * (1.0 - 1e-15)) {
          best = cand;
          bestd = d;
          improved = true;
          y = cand;
        } else {
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-13) break;
  }
  ClosestPoint r;
  r.point = best;
  r.distance = bestd;
  r.converged = false;
  return r;
}

}  // namespace

ClosestPoint closest_point_on_interface(const LevelSet& ls, Vec2 x) {
  const double tol = 1e-13 * std::max(1.0, std::abs(ls.phi(x)));
  const double angle_tol = 1e-8;

  ClosestPoint res;
  Vec2 y = x;
  if (!project_to_zero(ls, y, tol)) {
    // degenerate gradient along the way; seed the marching fallback from the
    // best zero found by bisection toward an interior direction
    return march_search(ls, x, y, tol);
  }

  double prev_t = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  for (int it = 0; it < 300; ++it) {
    res.iterations = it;
    const Vec2 g = ls.grad(y);
    const double gn = norm(g);
    if (gn < 1e-14) break;  // at a critical point of phi (cusp)
    const Vec2 tau = rot90({g.x / gn, g.y / gn});
    const Vec2 r = x - y;
    const double rn = norm(r);
    const double t = dot(r, tau);
    if (rn < 1e-13 || std::abs(t) <= angle_tol * std::max(rn, 1e-13)) {
      res.point = y;
      res.distance = rn;
      res.converged = std::abs(ls.phi(y)) <= std::max(tol, 1e-10);
      return res;
    }
    if (std::abs(t) > 0.9 * prev_t)
      lambda = std::max(0.25 * lambda, 1e-3);  // damp oscillation near high curvature
    else
      lambda = std::min(1.0, 1.7 * lambda);
    prev_t = std::abs(t);
    Vec2 cand{y.x + lambda * t * tau.x, y.y + lambda * t * tau.y};
    if (!project_to_zero(ls, cand, tol)) break;
    y = cand;
  }
  // no convergence (typically a cusp between x and its foot point)
  ClosestPoint fb = march_search(ls, x, y, tol);
  fb.iterations = res.iterations;
  return fb;
}

double signed_distance(const LevelSet& ls, Vec2 x) {
  const ClosestPoint cp = closest_point_on_interface(ls, x);
  return ls.phi(x) < 0.0 ? -cp.distance : cp.distance;
}

}  // namespace ifem
