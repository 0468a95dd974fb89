#include "ifem/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "ifem/quadrature.hpp"

namespace ifem {

ErrorNorms error_norms(const ProblemSetup& setup, const StateField& state,
                       const std::vector<double>& adjoint,
                       const std::function<double(Vec2)>& control) {
  const TriangleRule& rule = triangle_rule(6);
  const auto& mc = setup.mcase;
  ErrorNorms en;

  double y2 = 0.0, p2 = 0.0;
  const int ne = static_cast<int>(setup.mesh.elements.size());
  for (int e = 0; e < ne; ++e) {
    const LocalShapes sh = setup.space.local_shapes(e);
    const int ci = setup.cls.cut_index[e];
    for (int p = 0; p < sh.n_pieces; ++p) {
      const auto& tri = sh.pieces[p].tri;
      const int side = sh.pieces[p].side;
      const double area = sh.pieces[p].area;
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const Vec2 x = bary_point(tri, rule.barycentric[q]);
        double yh = 0.0, ph = 0.0;
        for (int k = 0; k < sh.n_nodes; ++k) {
          const double shp = sh.fn[p][k](x);
          yh += state.nodal[sh.nodes[k]] * shp;
          ph += adjoint[sh.nodes[k]] * shp;
        }
        if (ci >= 0 && !state.enrichment.empty())
          yh += state.enrichment.value(ci, p, x);
        const double ey = yh - mc.exact_state(x, side);
        const double ep = ph - mc.exact_adjoint(x, side);
        y2 += area * rule.weights[q] * ey * ey;
        p2 += area * rule.weights[q] * ep * ep;
        en.y_linf = std::max(en.y_linf, std::abs(ey));
        en.p_linf = std::max(en.p_linf, std::abs(ep));
      }
      // corner samples for the maximum norms: the interior quadrature points
      // miss the vertices and cut points, where piecewise-linear errors peak
      for (const Vec2& x : tri) {
        double yh = 0.0, ph = 0.0;
        for (int k = 0; k < sh.n_nodes; ++k) {
          const double shp = sh.fn[p][k](x);
          yh += state.nodal[sh.nodes[k]] * shp;
          ph += adjoint[sh.nodes[k]] * shp;
        }
        if (ci >= 0 && !state.enrichment.empty())
          yh += state.enrichment.value(ci, p, x);
        en.y_linf = std::max(en.y_linf, std::abs(yh - mc.exact_state(x, side)));
        en.p_linf = std::max(en.p_linf, std::abs(ph - mc.exact_adjoint(x, side)));
      }
    }
  }
  en.y_l2 = std::sqrt(y2);
  en.p_l2 = std::sqrt(p2);

  // control error along the polyline against the exact control at the closest
  // true-interface point
  double u2 = 0.0;
  const auto& im = setup.interface;
  for (int s = 0; s < im.size(); ++s) {
    const SegmentQuadrature quad = segment_quadrature(im.a[s], im.b[s], 3);
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const Vec2 x = quad.points[q];
      const ClosestPoint cp = closest_point_on_interface(mc.levelset, x);
      const double eu = control(x) - mc.exact_control(cp.point);
      u2 += quad.weights[q] * eu * eu;
      en.u_linf = std::max(en.u_linf, std::abs(eu));
    }
  }
  en.u_l2 = std::sqrt(u2);
  return en;
}

double convergence_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > h_fine))
    throw std::invalid_argument("convergence_order: need positive errors and h_coarse > h_fine");
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

}  // namespace ifem
