#include "ifem/space.hpp"

#include "ifem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ifem/linalg.hpp"

namespace ifem {

Affine p1_interpolant(const std::array<Vec2, 3>& tri, const std::array<double, 3>& values) {
  const double a2 = cross(tri[1] - tri[0], tri[2] - tri[0]);
  if (std::abs(a2) < 1e-300)
    throw std::invalid_argument("p1_interpolant: degenerate triangle");
  Vec2 g{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const Vec2 gi = rot90(tri[(i + 2) % 3] - tri[(i + 1) % 3]);
    g = g + (values[i] / a2) * gi;
  }
  Affine f;
  f.gx = g.x;
  f.gy = g.y;
  f.c = values[0] - dot(g, tri[0]);
  return f;
}

// Rows 0-2: nodal values on the vertex's own side; rows 3-4: continuity at
// the two chord endpoints; row 5: beta+ dn(plus) - beta- dn(minus) across the
// chord. Unknown layout: [c+, gx+, gy+, c-, gx-, gy-].
static void fill_coupling_matrix(double A[36], const std::array<Vec2, 3>& verts,
                                 const ElementCut& cut, double beta_plus, double beta_minus) {
  for (int i = 0; i < 36; ++i) A[i] = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int off = cut.vertex_side[k] > 0 ? 0 : 3;
    A[k * 6 + off + 0] = 1.0;
    A[k * 6 + off + 1] = verts[k].x;
    A[k * 6 + off + 2] = verts[k].y;
  }
  const Vec2 pts[2] = {cut.d, cut.e};
  for (int r = 3; r <= 4; ++r) {
    const Vec2 p = pts[r - 3];
    A[r * 6 + 0] = 1.0;
    A[r * 6 + 1] = p.x;
    A[r * 6 + 2] = p.y;
    A[r * 6 + 3] = -1.0;
    A[r * 6 + 4] = -p.x;
    A[r * 6 + 5] = -p.y;
  }
  A[5 * 6 + 1] = beta_plus * cut.normal.x;
  A[5 * 6 + 2] = beta_plus * cut.normal.y;
  A[5 * 6 + 4] = -beta_minus * cut.normal.x;
  A[5 * 6 + 5] = -beta_minus * cut.normal.y;
}

IfeBasis build_ife_basis(const std::array<Vec2, 3>& verts, const ElementCut& cut,
                         double beta_plus, double beta_minus) {
  double A0[36];
  fill_coupling_matrix(A0, verts, cut, beta_plus, beta_minus);
  double B[18] = {0.0};  // three right-hand sides, one per nodal condition
  for (int k = 0; k < 3; ++k) B[k * 3 + k] = 1.0;

  double A[36];
  std::copy(A0, A0 + 36, A);
  double X[18];
  std::copy(B, B + 18, X);
  if (!lu_solve_small(6, A, 3, X))
    throw std::runtime_error("build_ife_basis: singular coupling system (degenerate cut)");

  // Sliver cuts (chord endpoints near a vertex) make the coupling system
  // ill-conditioned; refine with extended-precision residuals so the
  // constraint violations stay at rounding level.
  for (int sweep = 0; sweep < 2; ++sweep) {
    double R[18];
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) {
        long double s = B[i * 3 + j];
        for (int k = 0; k < 6; ++k)
          s -= static_cast<long double>(A0[i * 6 + k]) * X[k * 3 + j];
        R[i * 3 + j] = static_cast<double>(s);
      }
    std::copy(A0, A0 + 36, A);
    if (!lu_solve_small(6, A, 3, R)) break;
    for (int i = 0; i < 18; ++i) X[i] += R[i];
  }

  IfeBasis basis;
  for (int i = 0; i < 3; ++i) {
    basis.plus[i] = {X[0 * 3 + i], X[1 * 3 + i], X[2 * 3 + i]};
    basis.minus[i] = {X[3 * 3 + i], X[4 * 3 + i], X[5 * 3 + i]};
  }
  return basis;
}

FeSpace build_space(const Mesh& mesh, const Classification& cls, const LevelSet& ls,
                    double beta_plus, double beta_minus, SpaceVariant variant) {
  if (!(beta_plus > 0.0) || !(beta_minus > 0.0))
    throw std::invalid_argument("build_space: diffusion coefficients must be positive");
  FeSpace sp;
  sp.mesh = &mesh;
  sp.cls = &cls;
  sp.ls = &ls;
  sp.beta_plus = beta_plus;
  sp.beta_minus = beta_minus;
  sp.variant = variant;
  sp.ife.reserve(cls.cuts.size());
  for (const ElementCut& cut : cls.cuts) {
    const auto& tv = mesh.elements[cut.element];
    const std::array<Vec2, 3> verts{mesh.nodes[tv[0]], mesh.nodes[tv[1]], mesh.nodes[tv[2]]};
    sp.ife.push_back(build_ife_basis(verts, cut, beta_plus, beta_minus));
  }
  if (variant == SpaceVariant::Conforming) {
    sp.conforming.reserve(cls.cuts.size());
    for (int ci = 0; ci < static_cast<int>(cls.cuts.size()); ++ci)
      sp.conforming.push_back(build_conforming_element(mesh, cls, sp.ife, ci));
  }
  return sp;
}

LocalShapes FeSpace::local_shapes(int element) const {
  LocalShapes sh;
  sh.element = element;
  const auto& tv = mesh->elements[element];
  const std::array<Vec2, 3> verts{mesh->nodes[tv[0]], mesh->nodes[tv[1]], mesh->nodes[tv[2]]};
  const int ci = cls->cut_index[element];

  if (ci < 0) {
    sh.n_nodes = 3;
    for (int k = 0; k < 3; ++k) sh.nodes[k] = tv[k];
    sh.n_pieces = 1;
    sh.pieces[0].tri = verts;
    sh.pieces[0].side = cls->side[element];
    sh.pieces[0].area = triangle_area(verts);
    for (int k = 0; k < 3; ++k) {
      std::array<double, 3> vals{0.0, 0.0, 0.0};
      vals[k] = 1.0;
      sh.fn[0][k] = p1_interpolant(verts, vals);
    }
    return sh;
  }

  if (variant == SpaceVariant::Conforming) {
    const ConformingElement& ce = conforming[ci];
    sh.n_nodes = ce.n_nodes;
    sh.nodes = ce.nodes;
    sh.n_pieces = ce.n_pieces;
    sh.pieces = ce.pieces;
    sh.fn = ce.fn;
    sh.chord_piece_plus = ce.chord_piece_plus;
    sh.chord_piece_minus = ce.chord_piece_minus;
    return sh;
  }

  const ElementCut& cut = cls->cuts[ci];
  const IfeBasis& basis = ife[ci];
  sh.n_nodes = 3;
  for (int k = 0; k < 3; ++k) sh.nodes[k] = tv[k];
  sh.n_pieces = 0;
  for (int t = 0; t < cut.n_plus; ++t) {
    sh.pieces[sh.n_pieces] = {cut.tri_plus[t], 1, triangle_area(cut.tri_plus[t])};
    for (int k = 0; k < 3; ++k) sh.fn[sh.n_pieces][k] = basis.plus[k];
    if (sh.chord_piece_plus < 0) sh.chord_piece_plus = sh.n_pieces;
    ++sh.n_pieces;
  }
  for (int t = 0; t < cut.n_minus; ++t) {
    sh.pieces[sh.n_pieces] = {cut.tri_minus[t], -1, triangle_area(cut.tri_minus[t])};
    for (int k = 0; k < 3; ++k) sh.fn[sh.n_pieces][k] = basis.minus[k];
    if (sh.chord_piece_minus < 0) sh.chord_piece_minus = sh.n_pieces;
    ++sh.n_pieces;
  }
  return sh;
}

int select_piece(const LocalShapes& sh, Vec2 x, int side_hint) {
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < sh.n_pieces; ++p) {
    if (side_hint != 0 && sh.pieces[p].side != side_hint) continue;
    const auto& t = sh.pieces[p].tri;
    const double a2 = cross(t[1] - t[0], t[2] - t[0]);
    const double l0 = cross(t[2] - t[1], x - t[1]) / a2;
    const double l1 = cross(t[0] - t[2], x - t[2]) / a2;
    const double l2 = 1.0 - l0 - l1;
    const double score = std::min({l0, l1, l2});
    if (score > best_score) {
      best_score = score;
      best = p;
    }
  }
  if (best < 0) throw std::runtime_error("select_piece: no admissible piece");
  return best;
}

double evaluate_local(const LocalShapes& sh, const std::vector<double>& coeff, Vec2 x,
                      int side_hint) {
  const int p = select_piece(sh, x, side_hint);
  double v = 0.0;
  for (int k = 0; k < sh.n_nodes; ++k) v += coeff[sh.nodes[k]] * sh.fn[p][k](x);
  return v;
}

}  // namespace ifem
