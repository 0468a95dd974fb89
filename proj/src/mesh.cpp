#include "ifem/mesh.hpp"

#include "ifem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace ifem {

Mesh build_mesh(int n) {
  if (n < 2) throw std::invalid_argument("build_mesh: n must be >= 2");
  Mesh m;
  m.n = n;
  m.h = 2.0 / n;
  m.nodes.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.nodes.push_back({-1.0 + i * m.h, -1.0 + j * m.h});
  m.elements.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = m.node_index(i, j), v10 = m.node_index(i + 1, j);
      const int v01 = m.node_index(i, j + 1), v11 = m.node_index(i + 1, j + 1);
      m.elements.push_back({v00, v10, v11});  // lower
      m.elements.push_back({v00, v11, v01});  // upper
    }
  }
  return m;
}

std::vector<int> Mesh::boundary_nodes() const {
  std::vector<int> b;
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
    if (is_boundary_node(v)) b.push_back(v);
  return b;
}

int Mesh::locate(Vec2 x) const {
  const int i = std::clamp(static_cast<int>(std::floor((x.x + 1.0) / h)), 0, n - 1);
  const int j = std::clamp(static_cast<int>(std::floor((x.y + 1.0) / h)), 0, n - 1);
  const Vec2 corner = nodes[node_index(i, j)];
  const bool lower = (x.x - corner.x) >= (x.y - corner.y);
  return 2 * (j * n + i) + (lower ? 0 : 1);
}

int Mesh::neighbor_through_edge(int element, int a, int b) const {
  auto has_edge = [&](int e) {
    const auto& t = elements[e];
    const int ca = (t[0] == a) + (t[1] == a) + (t[2] == a);
    const int cb = (t[0] == b) + (t[1] == b) + (t[2] == b);
    return ca == 1 && cb == 1;
  };
  const int ia = a % (n + 1), ja = a / (n + 1);
  for (int dj = -1; dj <= 0; ++dj) {
    for (int di = -1; di <= 0; ++di) {
      const int si = ia + di, sj = ja + dj;
      if (si < 0 || si >= n || sj < 0 || sj >= n) continue;
      for (int k = 0; k < 2; ++k) {
        const int e = 2 * (sj * n + si) + k;
        if (e != element && has_edge(e)) return e;
      }
    }
  }
  return -1;
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Counts strict sign changes of phi along the edge [p, q] using the snapped
// endpoint values plus interior samples. More than one change means the mesh
// cannot resolve the interface.
int edge_crossing_count(const LevelSet& ls, Vec2 p, Vec2 q, double fp, double fq,
                        double snap) {
  constexpr int kSamples = 15;
  int last = sign_of(fp);
  int changes = 0;
  auto feed = [&](double f) {
    const int s = (std::abs(f) <= snap) ? 0 : sign_of(f);
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  };
  for (int k = 1; k <= kSamples; ++k) {
    const double t = static_cast<double>(k) / (kSamples + 1);
    feed(ls.phi({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}));
  }
  feed(fq);
  return changes;
}

struct RingEntry {
  Vec2 p;
  int vertex = -1;  // local vertex index, -1 for an edge cut point
  bool is_cut = false;
};

// Splits the element ring (vertices with cut points inserted in boundary
// order) at the two cut entries and fan-triangulates both chains.
void build_subpolygons(const std::array<RingEntry, 5>& ring, int ring_size,
                       const std::array<int, 3>& vside, ElementCut& cut) {
  int c1 = -1, c2 = -1;
  for (int k = 0; k < ring_size; ++k) {
    if (ring[k].is_cut) {
      if (c1 < 0)
        c1 = k;
      else
        c2 = k;
    }
  }
  auto emit_chain = [&](int from, int to) {
    // collect entries from..to cyclically inclusive
    std::array<Vec2, 4> poly;
    int np = 0;
    int side = 0;
    for (int k = from;; k = (k + 1) % ring_size) {
      poly[np++] = ring[k].p;
      if (ring[k].vertex >= 0 && !ring[k].is_cut) {
        const int s = vside[ring[k].vertex];
        if (side == 0) side = s;
        if (s != side)
          throw std::runtime_error("classify_elements: inconsistent cut chain");
      }
      if (k == to) break;
    }
    if (side == 0) throw std::runtime_error("classify_elements: empty cut chain");
    auto& tris = (side > 0) ? cut.tri_plus : cut.tri_minus;
    auto& ntris = (side > 0) ? cut.n_plus : cut.n_minus;
    auto& area = (side > 0) ? cut.area_plus : cut.area_minus;
    for (int k = 1; k + 1 < np; ++k) {
      tris[ntris] = {poly[0], poly[k], poly[k + 1]};
      area += triangle_area(tris[ntris]);
      ++ntris;
    }
  };
  emit_chain(c1, c2);
  emit_chain(c2, c1);
}

double triangle_area3(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

}  // namespace

Classification classify_elements(const Mesh& mesh, const LevelSet& ls,
                                 double vertex_snap_tol) {
  const int ne = static_cast<int>(mesh.elements.size());
  Classification cls;
  cls.side.assign(ne, 0);
  cls.cut_index.assign(ne, -1);

  std::vector<double> phiv(mesh.nodes.size());
  for (std::size_t v = 0; v < mesh.nodes.size(); ++v) {
    const double f = ls.phi(mesh.nodes[v]);
    phiv[v] = (std::abs(f) <= vertex_snap_tol) ? 0.0 : f;
  }

  for (int e = 0; e < ne; ++e) {
    const auto& tv = mesh.elements[e];
    const std::array<Vec2, 3> v{mesh.nodes[tv[0]], mesh.nodes[tv[1]], mesh.nodes[tv[2]]};
    const std::array<double, 3> f{phiv[tv[0]], phiv[tv[1]], phiv[tv[2]]};
    std::array<int, 3> s{sign_of(f[0]), sign_of(f[1]), sign_of(f[2])};

    // resolution assumption: each edge is crossed at most once
    for (int k = 0; k < 3; ++k) {
      const int k1 = (k + 1) % 3;
      if (edge_crossing_count(ls, v[k], v[k1], f[k], f[k1], vertex_snap_tol) > 1)
        throw std::runtime_error(
            "classify_elements: interface crosses an element edge more than once "
            "(mesh too coarse), element " + std::to_string(e));
    }

    const int nzero = (s[0] == 0) + (s[1] == 0) + (s[2] == 0);
    int changed[3], nchanged = 0;
    for (int k = 0; k < 3; ++k)
      if (s[k] * s[(k + 1) % 3] < 0) changed[nchanged++] = k;

    if (nzero == 3)
      throw std::runtime_error("classify_elements: element degenerates onto the interface");

    if (nchanged == 0) {
      // untouched by the interface interior; zero vertices join the side of
      // the remaining vertices
      const int npos = (s[0] > 0) + (s[1] > 0) + (s[2] > 0);
      const int nneg = (s[0] < 0) + (s[1] < 0) + (s[2] < 0);
      cls.side[e] = (npos >= nneg) ? 1 : -1;
      (cls.side[e] > 0 ? cls.count_plus : cls.count_minus) += 1;
      continue;
    }

    ElementCut cut;
    cut.element = e;
    for (int k = 0; k < 3; ++k) cut.vertex_side[k] = (s[k] < 0) ? -1 : 1;

    auto normalized_root = [&](int k) {
      // evaluate the root with a global endpoint order so neighbouring
      // elements produce bit-identical cut points
      const int ga = tv[k], gb = tv[(k + 1) % 3];
      return (ga < gb) ? edge_intersection(ls, mesh.nodes[ga], mesh.nodes[gb])
                       : edge_intersection(ls, mesh.nodes[gb], mesh.nodes[ga]);
    };

    if (nchanged == 2) {
      cut.edge_d = changed[0];
      cut.edge_e = changed[1];
      cut.d = normalized_root(changed[0]);
      cut.e = normalized_root(changed[1]);
    } else if (nchanged == 1 && nzero == 1) {
      // interface passes through the vertex opposite the crossed edge
      const int vz = (s[0] == 0) ? 0 : (s[1] == 0 ? 1 : 2);
      if (changed[0] != (vz + 1) % 3)
        throw std::runtime_error(
            "classify_elements: crossed edge is not opposite the interface vertex");
      cut.vertex_d = vz;
      cut.d = v[vz];
      cut.edge_e = changed[0];
      cut.e = normalized_root(changed[0]);
    } else {
      throw std::runtime_error("classify_elements: unresolved sign configuration, element " +
                               std::to_string(e));
    }

    // ring walk with cut points inserted on their edges
    std::array<RingEntry, 5> ring;
    int rs = 0;
    for (int k = 0; k < 3; ++k) {
      RingEntry vert{v[k], k, cut.vertex_d == k};
      ring[rs++] = vert;
      if (cut.edge_d == k) ring[rs++] = RingEntry{cut.d, -1, true};
      if (cut.edge_e == k) ring[rs++] = RingEntry{cut.e, -1, true};
    }
    build_subpolygons(ring, rs, cut.vertex_side, cut);

    const double total = triangle_area3(v[0], v[1], v[2]);
    if (cut.n_plus == 0 || cut.n_minus == 0 ||
        std::abs(cut.area_plus + cut.area_minus - total) > 1e-12 * total)
      throw std::runtime_error("classify_elements: sub-polygon split failed, element " +
                               std::to_string(e));

    // chord normal oriented toward the plus side
    Vec2 t = cut.e - cut.d;
    const double tl = norm(t);
    if (tl < 1e-300)
      throw std::runtime_error("classify_elements: degenerate chord, element " +
                               std::to_string(e));
    Vec2 nrm = rot90({t.x / tl, t.y / tl});
    const Vec2 mid = 0.5 * (cut.d + cut.e);
    const Vec2 g = ls.grad(mid);
    double orient = dot(nrm, g);
    if (std::abs(orient) < 1e-14) {
      // fall back to the plus sub-polygon centroid
      Vec2 cp{0, 0};
      for (int k = 0; k < cut.n_plus; ++k)
        cp = cp + (1.0 / (3.0 * cut.n_plus)) *
                      (cut.tri_plus[k][0] + cut.tri_plus[k][1] + cut.tri_plus[k][2]);
      orient = dot(nrm, cp - mid);
    }
    if (orient < 0.0) nrm = {-nrm.x, -nrm.y};
    cut.normal = nrm;

    cls.cut_index[e] = static_cast<int>(cls.cuts.size());
    cls.cuts.push_back(cut);
  }
  return cls;
}

namespace {

// Endpoint connectivity key: an edge cut point is identified by its (sorted)
// global edge node pair, a vertex cut point by the node itself.
using EndpointKey = std::array<int, 2>;

EndpointKey endpoint_key(const Mesh& mesh, const ElementCut& cut, bool d_point) {
  const auto& tv = mesh.elements[cut.element];
  if (d_point ? cut.vertex_d >= 0 : cut.vertex_e >= 0) {
    const int lv = d_point ? cut.vertex_d : cut.vertex_e;
    return {-1, tv[lv]};
  }
  const int k = d_point ? cut.edge_d : cut.edge_e;
  const int ga = tv[k], gb = tv[(k + 1) % 3];
  return {std::min(ga, gb), std::max(ga, gb)};
}

}  // namespace

InterfaceMesh extract_interface_polyline(const Mesh& mesh, const Classification& cls,
                                         const LevelSet& ls) {
  (void)ls;
  const int nc = cls.count_interface();
  if (nc == 0) throw std::runtime_error("extract_interface_polyline: no interface elements");

  std::map<EndpointKey, std::vector<std::pair<int, int>>> incid;  // key -> (cut, end)
  for (int c = 0; c < nc; ++c) {
    const ElementCut& cut = cls.cuts[c];
    for (int endp = 0; endp < 2; ++endp) {
      const EndpointKey key = endpoint_key(mesh, cut, endp == 0);
      // the interface must stay strictly inside the domain
      if (key[0] < 0) {
        if (mesh.is_boundary_node(key[1]))
          throw std::runtime_error("extract_interface_polyline: interface touches the boundary");
      } else if (mesh.neighbor_through_edge(cut.element, key[0], key[1]) < 0) {
        throw std::runtime_error("extract_interface_polyline: interface touches the boundary");
      }
      incid[key].push_back({c, endp});
    }
  }
  for (const auto& [key, lst] : incid) {
    if (lst.size() != 2)
      throw std::runtime_error("extract_interface_polyline: open or branching interface");
  }

  InterfaceMesh im;
  im.segment_of_cut.assign(nc, -1);
  std::vector<char> used(nc, 0);
  int cur = 0;
  int enter_end = 0;  // enter cut `cur` at its D endpoint
  const EndpointKey start_key = endpoint_key(mesh, cls.cuts[0], true);
  for (int step = 0; step < nc; ++step) {
    const ElementCut& cut = cls.cuts[cur];
    if (used[cur])
      throw std::runtime_error("extract_interface_polyline: revisited interface element");
    used[cur] = 1;
    const Vec2 pin = (enter_end == 0) ? cut.d : cut.e;
    const Vec2 pout = (enter_end == 0) ? cut.e : cut.d;
    im.cut_of_segment.push_back(cur);
    im.segment_of_cut[cur] = im.size();
    im.a.push_back(pin);
    im.b.push_back(pout);
    im.midpoint.push_back(0.5 * (pin + pout));
    im.normal.push_back(cut.normal);
    im.length.push_back(dist(pin, pout));
    im.total_length += im.length.back();

    const EndpointKey exit_key = endpoint_key(mesh, cut, enter_end != 0);
    const auto& lst = incid.at(exit_key);
    const auto next = (lst[0].first == cur && lst[0].second == (enter_end == 0 ? 1 : 0))
                          ? lst[1]
                          : lst[0];
    cur = next.first;
    enter_end = next.second;
  }
  if (!(cur == 0 && enter_end == 0 && endpoint_key(mesh, cls.cuts[0], true) == start_key))
    throw std::runtime_error("extract_interface_polyline: polyline does not close");
  for (int c = 0; c < nc; ++c)
    if (!used[c])
      throw std::runtime_error("extract_interface_polyline: disconnected interface parts");
  return im;
}

int InterfaceMesh::nearest_segment(Vec2 x) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int s = 0; s < size(); ++s) {
    const double d = dist(x, midpoint[s]);
    if (d < bd) {
      bd = d;
      best = s;
    }
  }
  return best;
}

}  // namespace ifem
