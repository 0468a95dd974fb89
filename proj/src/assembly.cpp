#include "ifem/assembly.hpp"

#include <stdexcept>

#include "ifem/quadrature.hpp"

namespace ifem {

namespace {

template <typename PieceContribution>
void for_each_piece(const FeSpace& space, PieceContribution&& contribute) {
  const int ne = static_cast<int>(space.mesh->elements.size());
  for (int e = 0; e < ne; ++e) {
    const LocalShapes sh = space.local_shapes(e);
    for (int p = 0; p < sh.n_pieces; ++p) contribute(sh, p);
  }
}

}  // namespace

SparseCSR assemble_stiffness(const FeSpace& space) {
  std::vector<Triplet> trips;
  trips.reserve(space.mesh->elements.size() * 9);
  for_each_piece(space, [&](const LocalShapes& sh, int p) {
    const double ba = space.beta(sh.pieces[p].side) * sh.pieces[p].area;
    for (int i = 0; i < sh.n_nodes; ++i) {
      const Vec2 gi = sh.fn[p][i].grad();
      for (int j = 0; j < sh.n_nodes; ++j) {
        const Vec2 gj = sh.fn[p][j].grad();
        trips.push_back({sh.nodes[i], sh.nodes[j], ba * dot(gi, gj)});
      }
    }
  });
  return csr_from_triplets(space.n_dofs(), space.n_dofs(), trips);
}

SparseCSR assemble_mass(const FeSpace& space) {
  const TriangleRule& rule = triangle_rule(2);
  std::vector<Triplet> trips;
  trips.reserve(space.mesh->elements.size() * 9);
  for_each_piece(space, [&](const LocalShapes& sh, int p) {
    const auto& tri = sh.pieces[p].tri;
    const double area = sh.pieces[p].area;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const Vec2 x = bary_point(tri, rule.barycentric[q]);
      const double w = area * rule.weights[q];
      for (int i = 0; i < sh.n_nodes; ++i) {
        const double vi = sh.fn[p][i](x);
        for (int j = 0; j < sh.n_nodes; ++j)
          trips.push_back({sh.nodes[i], sh.nodes[j], w * vi * sh.fn[p][j](x)});
      }
    }
  });
  return csr_from_triplets(space.n_dofs(), space.n_dofs(), trips);
}

std::vector<double> assemble_volume_load(const FeSpace& space, const SideFn& f, int degree) {
  const TriangleRule& rule = triangle_rule(degree);
  std::vector<double> r(space.n_dofs(), 0.0);
  for_each_piece(space, [&](const LocalShapes& sh, int p) {
    const auto& tri = sh.pieces[p].tri;
    const double area = sh.pieces[p].area;
    const int side = sh.pieces[p].side;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const Vec2 x = bary_point(tri, rule.barycentric[q]);
      const double wf = area * rule.weights[q] * f(x, side);
      for (int i = 0; i < sh.n_nodes; ++i) r[sh.nodes[i]] += wf * sh.fn[p][i](x);
    }
  });
  return r;
}

namespace {

std::vector<double> interface_load_impl(const FeSpace& space, const InterfaceMesh& im,
                                        const std::function<double(int, Vec2)>& g,
                                        int order) {
  std::vector<double> r(space.n_dofs(), 0.0);
  for (int s = 0; s < im.size(); ++s) {
    const int ci = im.cut_of_segment[s];
    const LocalShapes sh = space.local_shapes(space.cls->cuts[ci].element);
    const int p = sh.chord_piece_plus;  // chord traces of both sides coincide
    if (p < 0) throw std::runtime_error("interface load: segment on a non-interface element");
    const SegmentQuadrature quad = segment_quadrature(im.a[s], im.b[s], order);
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const double wg = quad.weights[q] * g(s, quad.points[q]);
      for (int i = 0; i < sh.n_nodes; ++i)
        r[sh.nodes[i]] += wg * sh.fn[p][i](quad.points[q]);
    }
  }
  return r;
}

}  // namespace

std::vector<double> assemble_interface_load(const FeSpace& space, const InterfaceMesh& im,
                                            const std::function<double(Vec2)>& g, int order) {
  return interface_load_impl(space, im, [&](int, Vec2 x) { return g(x); }, order);
}

std::vector<double> assemble_interface_load(const FeSpace& space, const InterfaceMesh& im,
                                            const std::vector<double>& segment_values,
                                            int order) {
  if (static_cast<int>(segment_values.size()) != im.size())
    throw std::invalid_argument("interface load: one value per segment required");
  return interface_load_impl(
      space, im, [&](int s, Vec2) { return segment_values[s]; }, order);
}

std::vector<double> assemble_enrichment_correction(const FeSpace& space,
                                                   const EnrichmentField& enr) {
  std::vector<double> r(space.n_dofs(), 0.0);
  if (enr.empty()) return r;
  for (const ElementCut& cut : space.cls->cuts) {
    const int ci = space.cls->cut_index[cut.element];
    const LocalShapes sh = space.local_shapes(cut.element);
    for (int p = 0; p < sh.n_pieces; ++p) {
      const int side = sh.pieces[p].side;
      const Vec2 ge = enr.gradient(ci, p);
      const double ba = space.beta(side) * sh.pieces[p].area;
      for (int i = 0; i < sh.n_nodes; ++i)
        r[sh.nodes[i]] -= ba * dot(ge, sh.fn[p][i].grad());
    }
  }
  return r;
}

std::vector<double> assemble_enrichment_mass(const FeSpace& space,
                                             const EnrichmentField& enr) {
  std::vector<double> r(space.n_dofs(), 0.0);
  if (enr.empty()) return r;
  const TriangleRule& rule = triangle_rule(2);
  for (const ElementCut& cut : space.cls->cuts) {
    const int ci = space.cls->cut_index[cut.element];
    const LocalShapes sh = space.local_shapes(cut.element);
    for (int p = 0; p < sh.n_pieces; ++p) {
      const auto& tri = sh.pieces[p].tri;
      const double area = sh.pieces[p].area;
      const int side = sh.pieces[p].side;
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const Vec2 x = bary_point(tri, rule.barycentric[q]);
        const double wv = area * rule.weights[q] * enr.value(ci, p, x);
        for (int i = 0; i < sh.n_nodes; ++i) r[sh.nodes[i]] += wv * sh.fn[p][i](x);
      }
    }
  }
  return r;
}

}  // namespace ifem
