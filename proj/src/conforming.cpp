#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifem/space.hpp"

#include "ifem/quadrature.hpp"

namespace ifem {

namespace {

double min_angle(const std::array<Vec2, 3>& t) {
  double best = 4.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2 u = t[(k + 1) % 3] - t[k];
    const Vec2 v = t[(k + 2) % 3] - t[k];
    const double c = dot(u, v) / (norm(u) * norm(v));
    best = std::min(best, std::acos(std::clamp(c, -1.0, 1.0)));
  }
  return best;
}

// Accumulates the averaged value of every coupled shape function at one cut
// point lying on the element edge (ga, gb). Own contributions come from the
// element's immersed basis; the neighbour through the edge contributes the
// trace of its own immersed basis at the identical point.
struct PointValues {
  std::array<int, 5>* nodes;
  int* n_nodes;
  std::array<double, 5> value{};

  int find_or_add(int g) {
    for (int k = 0; k < *n_nodes; ++k)
      if ((*nodes)[k] == g) return k;
    if (*n_nodes == 5) throw std::runtime_error("conforming element: patch overflow");
    (*nodes)[(*n_nodes)++] = g;
    return *n_nodes - 1;
  }
};

void average_at_cut_point(const Mesh& mesh, const Classification& cls,
                          const std::vector<IfeBasis>& ife, int element, Vec2 point,
                          int ga, int gb, const IfeBasis& own, PointValues& out) {
  const auto& tv = mesh.elements[element];
  const int neigh = mesh.neighbor_through_edge(element, ga, gb);
  const double w = (neigh >= 0) ? 0.5 : 1.0;  // boundary fallback: own trace only
  for (int k = 0; k < 3; ++k)
    out.value[out.find_or_add(tv[k])] += w * own.plus[k](point);
  if (neigh < 0) return;
  const int nci = cls.cut_index[neigh];
  if (nci < 0)
    throw std::runtime_error(
        "conforming element: neighbour through a cut edge is not an interface element");
  const auto& ntv = mesh.elements[neigh];
  const IfeBasis& nb = ife[nci];
  for (int k = 0; k < 3; ++k)
    out.value[out.find_or_add(ntv[k])] += 0.5 * nb.plus[k](point);
}

}  // namespace

ConformingElement build_conforming_element(const Mesh& mesh, const Classification& cls,
                                           const std::vector<IfeBasis>& ife, int cut_index) {
  const ElementCut& cut = cls.cuts[cut_index];
  const int e = cut.element;
  const auto& tv = mesh.elements[e];
  const std::array<Vec2, 3> v{mesh.nodes[tv[0]], mesh.nodes[tv[1]], mesh.nodes[tv[2]]};
  const IfeBasis& own = ife[cut_index];

  ConformingElement ce;
  ce.n_nodes = 3;
  for (int k = 0; k < 3; ++k) ce.nodes[k] = tv[k];

  // Shape-function values at the sub-triangulation corners: element vertices
  // carry nodal values, cut points carry averaged traces.
  PointValues at_d{&ce.nodes, &ce.n_nodes};
  PointValues at_e{&ce.nodes, &ce.n_nodes};

  if (cut.vertex_d >= 0) {
    // the chord starts at a mesh node: nodal values, no averaging
    at_d.value[cut.vertex_d] = 1.0;
  } else {
    average_at_cut_point(mesh, cls, ife, e, cut.d, tv[cut.edge_d],
                         tv[(cut.edge_d + 1) % 3], own, at_d);
  }
  average_at_cut_point(mesh, cls, ife, e, cut.e, tv[cut.edge_e], tv[(cut.edge_e + 1) % 3],
                       own, at_e);

  auto corner_values = [&](int shape, const std::array<int, 3>& kinds) {
    // kind: 0..2 element vertex, 3 = cut point D, 4 = cut point E
    std::array<double, 3> vals{};
    for (int c = 0; c < 3; ++c) {
      const int kind = kinds[c];
      if (kind < 3)
        vals[c] = (shape == kind) ? 1.0 : 0.0;
      else
        vals[c] = (kind == 3) ? at_d.value[shape] : at_e.value[shape];
    }
    return vals;
  };
  auto corner_point = [&](int kind) {
    if (kind < 3) return v[kind];
    return kind == 3 ? cut.d : cut.e;
  };
  auto emit_piece = [&](std::array<int, 3> kinds, int side) {
    const int p = ce.n_pieces++;
    std::array<Vec2, 3> tri{corner_point(kinds[0]), corner_point(kinds[1]),
                            corner_point(kinds[2])};
    ce.pieces[p] = {tri, side, triangle_area(tri)};
    for (int j = 0; j < ce.n_nodes; ++j)
      ce.fn[p][j] = p1_interpolant(tri, corner_values(j, kinds));
    return p;
  };
  auto mark_chord = [&](int piece, int side) {
    (side > 0 ? ce.chord_piece_plus : ce.chord_piece_minus) = piece;
  };

  if (cut.vertex_d >= 0) {
    // chord from vertex a to point E on the opposite edge: two sub-triangles
    const int a = cut.vertex_d, b = (a + 1) % 3, c = (a + 2) % 3;
    mark_chord(emit_piece({a, b, 4}, cut.vertex_side[b]), cut.vertex_side[b]);
    mark_chord(emit_piece({a, 4, c}, cut.vertex_side[c]), cut.vertex_side[c]);
    return ce;
  }

  // Standard cut: vertex a is alone on its side; D sits on edge (a, b),
  // E' on edge (c, a). Kind 3/4 follow cut.d/cut.e, so map which of the two
  // cut points lies on which edge.
  int a = -1;
  for (int k = 0; k < 3; ++k) {
    const bool in_d = (k == cut.edge_d) || (k == (cut.edge_d + 1) % 3);
    const bool in_e = (k == cut.edge_e) || (k == (cut.edge_e + 1) % 3);
    if (in_d && in_e) a = k;
  }
  if (a < 0) throw std::runtime_error("conforming element: cut edges share no vertex");
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  if (cut.vertex_side[b] != cut.vertex_side[c])
    throw std::runtime_error("conforming element: inconsistent vertex sides");
  const int kind_ab = (cut.edge_d == a) ? 3 : 4;  // cut point on edge (a, b)
  const int kind_ca = (kind_ab == 3) ? 4 : 3;     // cut point on edge (c, a)

  const Vec2 p_ab = corner_point(kind_ab), p_ca = corner_point(kind_ca);
  mark_chord(emit_piece({a, kind_ab, kind_ca}, cut.vertex_side[a]), cut.vertex_side[a]);

  // Split the quad (p_ab, b, c, p_ca) along the better-conditioned diagonal.
  const int qside = cut.vertex_side[b];
  const double opt1 = std::min(min_angle({p_ab, v[b], v[c]}), min_angle({p_ab, v[c], p_ca}));
  const double opt2 = std::min(min_angle({p_ab, v[b], p_ca}), min_angle({v[b], v[c], p_ca}));
  if (opt1 >= opt2) {
    emit_piece({kind_ab, b, c}, qside);
    mark_chord(emit_piece({kind_ab, c, kind_ca}, qside), qside);
  } else {
    mark_chord(emit_piece({kind_ab, b, kind_ca}, qside), qside);
    emit_piece({b, c, kind_ca}, qside);
  }
  return ce;
}

}  // namespace ifem
