#include "ifem/enrichment.hpp"

#include <cmath>
#include <stdexcept>

namespace ifem {

EnrichmentAnchors compute_enrichment_anchors(const FeSpace& space) {
  const Mesh& mesh = *space.mesh;
  const LevelSet& ls = *space.ls;
  const Classification& cls = *space.cls;

  EnrichmentAnchors a;
  a.chord.reserve(cls.cuts.size());
  std::vector<char> seen(mesh.nodes.size(), 0);
  for (const ElementCut& cut : cls.cuts) {
    const Vec2 mid = 0.5 * (cut.d + cut.e);
    a.chord.push_back(closest_point_on_interface(ls, mid).point);
    for (int k = 0; k < 3; ++k) {
      const int node = mesh.elements[cut.element][k];
      if (seen[node]) continue;
      seen[node] = 1;
      const ClosestPoint cp = closest_point_on_interface(ls, mesh.nodes[node]);
      // Nodes on the interface contribute nothing (the tent vanishes there);
      // skipping them also avoids evaluating jump data where the interface
      // normal may be undefined (e.g. at a cusp).
      if (cp.distance <= 1e-14) continue;
      a.band_node.push_back(node);
      a.band_foot.push_back(cp.point);
      a.band_dist.push_back(cp.distance);
    }
  }
  return a;
}

EnrichmentField build_enrichment(const FeSpace& space,
                                 const std::function<double(Vec2)>& flux_jump,
                                 const EnrichmentAnchors* anchors) {
  const Mesh& mesh = *space.mesh;
  const Classification& cls = *space.cls;
  const double denom = space.beta_plus + space.beta_minus;

  EnrichmentAnchors local;
  if (!anchors) {
    local = compute_enrichment_anchors(space);
    anchors = &local;
  }
  if (anchors->chord.size() != cls.cuts.size())
    throw std::invalid_argument("build_enrichment: anchor count does not match cut count");

  // Global tent values at the band nodes, shared by every element the node
  // touches so the local interpolants agree along shared edges.
  std::vector<double> v(mesh.nodes.size(), 0.0);
  for (std::size_t i = 0; i < anchors->band_node.size(); ++i) {
    const double j = flux_jump(anchors->band_foot[i]);
    if (!std::isfinite(j))
      throw std::runtime_error("build_enrichment: non-finite jump data at a band-node foot");
    v[anchors->band_node[i]] = -j * anchors->band_dist[i] / denom;
  }

  EnrichmentField enr;
  enr.fn.resize(cls.cuts.size());
  for (std::size_t ci = 0; ci < cls.cuts.size(); ++ci) {
    const ElementCut& cut = cls.cuts[ci];
    const double j = flux_jump(anchors->chord[ci]);
    if (!std::isfinite(j))
      throw std::runtime_error("build_enrichment: non-finite jump data at a chord anchor");

    // sigma(x) = normal . (x - d) is the signed distance to the chord line,
    // positive on the plus side; the tent -J |sigma| / (beta+ + beta-) then
    // satisfies beta- d/dn(minus) - beta+ d/dn(plus) = J with the smallest
    // possible maximal slope, keeping the enrichment comparable in size to
    // the kink it represents rather than to the full jump.
    const double s = j / denom;
    const Affine ramp_plus{s * dot(cut.normal, cut.d), -s * cut.normal.x, -s * cut.normal.y};
    const Affine ramp_minus{-ramp_plus.c, -ramp_plus.gx, -ramp_plus.gy};

    const LocalShapes sh = space.local_shapes(cut.element);
    for (int p = 0; p < sh.n_pieces; ++p) {
      Affine f = sh.pieces[p].side > 0 ? ramp_plus : ramp_minus;
      for (int i = 0; i < sh.n_nodes; ++i) {
        const double vi = v[sh.nodes[i]];
        if (vi == 0.0) continue;
        f.c -= vi * sh.fn[p][i].c;
        f.gx -= vi * sh.fn[p][i].gx;
        f.gy -= vi * sh.fn[p][i].gy;
      }
      enr.fn[ci][p] = f;
    }
  }
  return enr;
}

}  // namespace ifem
