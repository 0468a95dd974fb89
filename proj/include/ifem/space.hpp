#pragma once

// Piecewise-linear immersed finite element space on an unfitted uniform mesh.
//
// On elements away from the interface the space is the standard P1 space. On
// interface elements each nodal shape function consists of two affine pieces
// separated by the chord through the element's two cut points; the pieces are
// coupled by continuity at both cut points and by continuity of the conormal
// flux beta * d/dn across the chord. The default conforming variant replaces
// the (edge-discontinuous) immersed shapes by piecewise-P1 functions on a
// subtriangulation, with cut-point values averaged between the two elements
// sharing the cut edge; the raw nonconforming shapes remain selectable.

#include <array>
#include <vector>

#include "ifem/geometry.hpp"
#include "ifem/mesh.hpp"

namespace ifem {

// Affine scalar function c + gx*x + gy*y.
struct Affine {
  double c = 0.0, gx = 0.0, gy = 0.0;
  double operator()(Vec2 p) const { return c + gx * p.x + gy * p.y; }
  Vec2 grad() const { return {gx, gy}; }
};

// Affine interpolating given values at the vertices of a nondegenerate triangle.
Affine p1_interpolant(const std::array<Vec2, 3>& tri, const std::array<double, 3>& values);

// The two affine pieces of the three nodal immersed shape functions on one
// interface element.
struct IfeBasis {
  std::array<Affine, 3> plus;
  std::array<Affine, 3> minus;
};

// Solves the 6x6 coupling system (3 nodal conditions, value continuity at both
// cut points, conormal flux continuity across the chord). Throws when the
// system is numerically singular (degenerate cut geometry).
IfeBasis build_ife_basis(const std::array<Vec2, 3>& verts, const ElementCut& cut,
                         double beta_plus, double beta_minus);

// Which side of the element chord a point falls on (+1 / -1).
inline int chord_side(const ElementCut& cut, Vec2 x) {
  const Vec2 mid = 0.5 * (cut.d + cut.e);
  return dot(cut.normal, x - mid) >= 0.0 ? 1 : -1;
}

// One positively oriented triangular integration piece of an element.
struct LocalPiece {
  std::array<Vec2, 3> tri{};
  int side = 1;  // +1 / -1 relative to the interface
  double area = 0.0;
};

// Uniform per-element view used by every assembly and evaluation loop:
// n_nodes coupled global nodes, n_pieces triangular pieces, and the affine
// restriction fn[piece][node] of each node's shape function on each piece.
struct LocalShapes {
  int element = -1;
  int n_nodes = 0;
  std::array<int, 5> nodes{};
  int n_pieces = 0;
  std::array<LocalPiece, 4> pieces{};
  std::array<std::array<Affine, 5>, 4> fn{};
  // Piece adjacent to the interface chord on each side (-1 away from the
  // interface). The trace of any shape function on the chord is the trace of
  // either chord piece; they coincide along the chord.
  int chord_piece_plus = -1;
  int chord_piece_minus = -1;

  bool is_interface() const { return chord_piece_plus >= 0; }
};

// Conforming variant data for one interface element: values of every coupled
// shape function at the two cut points, plus the subtriangulation. Built by
// averaging the immersed traces of the two elements sharing each cut edge.
struct ConformingElement {
  int n_nodes = 3;
  std::array<int, 5> nodes{};
  int n_pieces = 0;
  std::array<LocalPiece, 4> pieces{};
  std::array<std::array<Affine, 5>, 4> fn{};
  int chord_piece_plus = -1;
  int chord_piece_minus = -1;
};

// Builds one conforming interface element from the immersed bases of the
// element and of its neighbours through the cut edges. The element carries up
// to two extra coupled nodes (the opposite vertices of those neighbours).
ConformingElement build_conforming_element(const Mesh& mesh, const Classification& cls,
                                           const std::vector<IfeBasis>& ife, int cut_index);

enum class SpaceVariant { Nonconforming, Conforming };

struct FeSpace {
  const Mesh* mesh = nullptr;
  const Classification* cls = nullptr;
  const LevelSet* ls = nullptr;
  double beta_plus = 1.0;
  double beta_minus = 1.0;
  SpaceVariant variant = SpaceVariant::Nonconforming;
  std::vector<IfeBasis> ife;                  // indexed by cut index
  std::vector<ConformingElement> conforming;  // indexed by cut index (conforming variant)

  double beta(int side) const { return side > 0 ? beta_plus : beta_minus; }
  int n_dofs() const { return static_cast<int>(mesh->nodes.size()); }

  // Assembles the uniform local view of one element.
  LocalShapes local_shapes(int element) const;
};

FeSpace build_space(const Mesh& mesh, const Classification& cls, const LevelSet& ls,
                    double beta_plus, double beta_minus,
                    SpaceVariant variant = SpaceVariant::Conforming);

// Picks the piece whose triangle contains x best (largest minimal barycentric
// coordinate). side_hint (+1/-1) restricts the search to pieces of that side,
// which matters exactly on the chord where one-sided values differ; 0 means
// no preference.
int select_piece(const LocalShapes& sh, Vec2 x, int side_hint = 0);

// Evaluates sum_i coeff[nodes[i]] * shape_i at x on the selected piece.
double evaluate_local(const LocalShapes& sh, const std::vector<double>& coeff, Vec2 x,
                      int side_hint = 0);

}  // namespace ifem
