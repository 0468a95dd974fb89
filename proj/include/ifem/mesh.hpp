#pragma once

#include <array>
#include <vector>

#include "ifem/geometry.hpp"

namespace ifem {

// Uniform triangulation of [-1,1]^2: n x n squares, each split along the
// bottom-left to top-right diagonal. Nodes are ordered lexicographically
// (x fastest); element 2*(j*n+i) is the lower triangle of square (i,j) and
// 2*(j*n+i)+1 the upper one. All triangles are positively oriented.
struct Mesh {
  int n = 0;
  double h = 0.0;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> elements;

  int node_index(int i, int j) const { return j * (n + 1) + i; }
  bool is_boundary_node(int v) const {
    const int i = v % (n + 1), j = v / (n + 1);
    return i == 0 || i == n || j == 0 || j == n;
  }
  std::vector<int> boundary_nodes() const;
  // Element containing x (points outside the domain are clamped to it).
  int locate(Vec2 x) const;
  // The element on the other side of the edge {a, b} (global node ids), or -1
  // on the boundary. `element` must contain that edge.
  int neighbor_through_edge(int element, int a, int b) const;
};

Mesh build_mesh(int n);  // throws std::invalid_argument for n < 2

// Classification of one cut element. The chord endpoints d and e lie on two
// different edges (or one of them on a vertex when the interface passes
// through it). The chord splits the triangle into a plus and a minus
// sub-polygon, stored fan-triangulated with positive orientation.
struct ElementCut {
  int element = -1;
  Vec2 d, e;
  int edge_d = -1, edge_e = -1;      // local edge index (k: v_k -> v_{k+1}), -1 at a vertex
  int vertex_d = -1, vertex_e = -1;  // local vertex index when the point is a vertex
  std::array<int, 3> vertex_side{};  // +1 / -1 (vertices snapped onto the interface: +1)
  Vec2 normal;                       // unit normal of the chord, toward the plus side
  int n_plus = 0, n_minus = 0;
  std::array<std::array<Vec2, 3>, 2> tri_plus{}, tri_minus{};
  double area_plus = 0.0, area_minus = 0.0;
};

struct Classification {
  std::vector<int> side;       // per element: +1, -1, or 0 for interface elements
  std::vector<int> cut_index;  // per element: index into cuts, or -1
  std::vector<ElementCut> cuts;
  int count_plus = 0, count_minus = 0;
  int count_interface() const { return static_cast<int>(cuts.size()); }
};

// Classifies every element against the zero level set. Vertices with
// |phi| <= vertex_snap_tol are treated as lying on the interface; an element
// whose closure meets the interface only at vertices or along an edge is not
// an interface element. The resolution assumptions (at most one crossing per
// edge, chord endpoints on two different edges) are verified by sampling and
// violations throw std::runtime_error.
Classification classify_elements(const Mesh& mesh, const LevelSet& ls,
                                 double vertex_snap_tol = 1e-12);

// The discrete interface: one chord per cut element, chained into a single
// closed polyline. Segment order and endpoint order (a -> b) follow the loop.
struct InterfaceMesh {
  std::vector<int> cut_of_segment;
  std::vector<int> segment_of_cut;  // indexed like Classification::cuts
  std::vector<Vec2> a, b, midpoint, normal;
  std::vector<double> length;
  double total_length = 0.0;
  int size() const { return static_cast<int>(a.size()); }
  int nearest_segment(Vec2 x) const;  // by midpoint distance
};

// Chains the element chords into a closed loop; throws std::runtime_error if
// the chords do not form exactly one closed curve strictly inside the domain.
InterfaceMesh extract_interface_polyline(const Mesh& mesh, const Classification& cls,
                                         const LevelSet& ls);

}  // namespace ifem
