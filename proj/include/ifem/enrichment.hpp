#pragma once

// Flux-jump enrichment. The interface condition
//   beta- dy/dn(minus) - beta+ dy/dn(plus) = J
// is imposed through an explicit enrichment function supported on the
// interface elements. On each such element the enrichment is the difference
// of two pieces:
//
//  * a tent -J(x_e) |sigma(x)| / (beta+ + beta-), where sigma is the signed
//    distance to the chord line and x_e the interface point closest to the
//    chord midpoint. The tent vanishes on the chord (so the enrichment is
//    continuous across it) and carries the conormal flux jump J exactly;
//    splitting the slope evenly between the sides keeps the field comparable
//    in size to the gradient kink it represents instead of the full jump,
//    which matters where the interface curves strongly; and
//
//  * the interpolant, in the element's own shape functions, of global tent
//    values at the coupled nodes: v_A = -J(foot(A)) dist(A) / (beta+ + beta-)
//    with foot(A) the interface point closest to node A.
//
// Subtracting the interpolant matters only through its truncation to the
// interface elements: interpolants lie in the finite element space, so the
// solved nodal coefficients absorb any in-space shift, but the truncated
// remainder leaves enrichment traces on the edges of the interface band that
// are merely the O(h^2) interpolation gap of the tent instead of O(h) value
// mismatches. Without the subtraction those mismatches are irreparable by the
// (continuous) nodal part and dominate the pointwise error near the
// interface.

#include <functional>
#include <vector>

#include "ifem/space.hpp"

namespace ifem {

// Geometric data reused by every enrichment build on a fixed mesh: the
// closest interface point of each chord midpoint, and for every node of an
// interface element its closest interface point and distance. Depends only on
// mesh and level set, so callers can compute it once and reuse it across
// repeated builds with changing jump data. Nodes lying on the interface are
// excluded (the tent vanishes there, and the interface normal may be
// undefined, e.g. at a cusp).
struct EnrichmentAnchors {
  std::vector<Vec2> chord;        // per cut index
  std::vector<int> band_node;     // nodes of interface elements, off-interface
  std::vector<Vec2> band_foot;    // closest interface point per band node
  std::vector<double> band_dist;  // unsigned distance per band node

  bool empty() const { return chord.empty() && band_node.empty(); }
};

EnrichmentAnchors compute_enrichment_anchors(const FeSpace& space);

// Piecewise representation of the enrichment, mirroring the local pieces of
// LocalShapes on every interface element.
struct EnrichmentField {
  std::vector<std::array<Affine, 4>> fn;  // indexed [cut index][local piece]

  bool empty() const { return fn.empty(); }
  double value(int cut_index, int piece, Vec2 x) const {
    if (empty()) return 0.0;
    return fn[cut_index][piece](x);
  }
  Vec2 gradient(int cut_index, int piece) const {
    if (empty()) return {0.0, 0.0};
    return fn[cut_index][piece].grad();
  }
};

// flux_jump is evaluated at the chord anchors and band-node feet. Pass
// precomputed anchors to skip the closest-point searches; nullptr recomputes
// them on the fly.
EnrichmentField build_enrichment(const FeSpace& space,
                                 const std::function<double(Vec2)>& flux_jump,
                                 const EnrichmentAnchors* anchors = nullptr);

}  // namespace ifem
