#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "ifem/geometry.hpp"
#include "ifem/mesh.hpp"

using namespace ifem;

TEST_CASE("build_mesh: counts, spacing, ordering, orientation") {
  const int n = 8;
  const Mesh mesh = build_mesh(n);
  CHECK(mesh.n == n);
  CHECK(mesh.h == doctest::Approx(2.0 / n));
  REQUIRE(static_cast<int>(mesh.nodes.size()) == (n + 1) * (n + 1));
  REQUIRE(static_cast<int>(mesh.elements.size()) == 2 * n * n);

  // lexicographic nodes, x fastest
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const Vec2 p = mesh.nodes[mesh.node_index(i, j)];
      CHECK(p.x == doctest::Approx(-1.0 + i * mesh.h));
      CHECK(p.y == doctest::Approx(-1.0 + j * mesh.h));
    }

  // positive orientation, uniform area
  for (const auto& el : mesh.elements) {
    const double area =
        0.5 * cross(mesh.nodes[el[1]] - mesh.nodes[el[0]], mesh.nodes[el[2]] - mesh.nodes[el[0]]);
    CHECK(area == doctest::Approx(0.5 * mesh.h * mesh.h).epsilon(1e-13));
  }

  CHECK(static_cast<int>(mesh.boundary_nodes().size()) == 4 * n);
  for (int v : mesh.boundary_nodes()) CHECK(mesh.is_boundary_node(v));

  CHECK_THROWS_AS(build_mesh(1), std::invalid_argument);
}

TEST_CASE("locate finds the element containing a point") {
  const Mesh mesh = build_mesh(6);
  for (const Vec2 x : {Vec2{0.13, -0.41}, Vec2{-0.99, 0.99}, Vec2{0.7, 0.7}}) {
    const int e = mesh.locate(x);
    REQUIRE(e >= 0);
    const auto& el = mesh.elements[e];
    const Vec2 a = mesh.nodes[el[0]], b = mesh.nodes[el[1]], c = mesh.nodes[el[2]];
    const double s = cross(b - a, c - a);
    const double l0 = cross(b - x, c - x) / s;
    const double l1 = cross(c - x, a - x) / s;
    const double l2 = cross(a - x, b - x) / s;
    CHECK(l0 >= -1e-12);
    CHECK(l1 >= -1e-12);
    CHECK(l2 >= -1e-12);
  }
}

TEST_CASE("neighbor_through_edge is symmetric and -1 on the boundary") {
  const Mesh mesh = build_mesh(4);
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    const auto& el = mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      const int a = el[k], b = el[(k + 1) % 3];
      const int nb = mesh.neighbor_through_edge(e, a, b);
      if (nb >= 0) CHECK(mesh.neighbor_through_edge(nb, a, b) == e);
    }
  }
  // the bottom edge of the first lower triangle lies on the boundary
  const auto& el0 = mesh.elements[0];
  CHECK(mesh.neighbor_through_edge(0, el0[0], el0[1]) == -1);
}

TEST_CASE("classification partitions the elements and splits areas exactly") {
  const LevelSet ls = waterdrop_levelset();
  const Mesh mesh = build_mesh(32);
  const Classification cls = classify_elements(mesh, ls);
  CHECK(cls.count_plus + cls.count_minus + cls.count_interface() ==
        static_cast<int>(mesh.elements.size()));
  CHECK(cls.count_interface() > 0);
  CHECK(cls.count_minus > 0);

  for (const ElementCut& cut : cls.cuts) {
    CHECK(cls.cut_index[cut.element] >= 0);
    CHECK(cut.area_plus > 0.0);
    CHECK(cut.area_minus > 0.0);
    CHECK(cut.area_plus + cut.area_minus ==
          doctest::Approx(0.5 * mesh.h * mesh.h).epsilon(1e-12));
    CHECK(norm(cut.normal) == doctest::Approx(1.0).epsilon(1e-13));
    // the normal points toward growing phi
    const Vec2 mid = 0.5 * (cut.d + cut.e);
    const double step = 0.3 * mesh.h;
    CHECK(ls.phi(mid + step * cut.normal) > ls.phi(mid - step * cut.normal));
    // cut points are on the interface
    CHECK(std::abs(ls.phi(cut.d)) <= 1e-9);
    CHECK(std::abs(ls.phi(cut.e)) <= 1e-9);
  }
}

TEST_CASE("interface element count grows linearly with refinement") {
  const LevelSet ls = waterdrop_levelset();
  const int c32 = classify_elements(build_mesh(32), ls).count_interface();
  const int c64 = classify_elements(build_mesh(64), ls).count_interface();
  const double ratio = static_cast<double>(c64) / c32;
  CHECK(ratio >= 1.7);
  CHECK(ratio <= 2.3);
  CHECK(c32 >= 32);      // at least ~one band element per grid line it crosses
  CHECK(c32 <= 4 * 32);  // but only a thin band
}

TEST_CASE("interface polyline: closed chain with second-order length defect") {
  const Vec2 c{0.1, -0.05};
  const double R = 0.6;
  const LevelSet circ = circle_levelset(c, R);
  const double exact = 2.0 * std::numbers::pi * R;

  double prev_defect = 0.0;
  for (int n : {16, 32, 64}) {
    const Mesh mesh = build_mesh(n);
    const Classification cls = classify_elements(mesh, circ);
    const InterfaceMesh im = extract_interface_polyline(mesh, cls, circ);
    REQUIRE(im.size() == cls.count_interface());

    // consecutive segments chain, and the loop closes
    for (int s = 0; s < im.size(); ++s) {
      const int next = (s + 1) % im.size();
      CHECK(dist(im.b[s], im.a[next]) <= 1e-12);
      CHECK(im.length[s] == doctest::Approx(dist(im.a[s], im.b[s])).epsilon(1e-13));
    }

    const double defect = exact - im.total_length;  // inscribed chords: always short
    CHECK(defect > 0.0);
    CHECK(im.total_length == doctest::Approx(exact).epsilon(0.05));
    if (prev_defect > 0.0) {
      const double rate = prev_defect / defect;
      CHECK(rate >= 3.0);  // O(h^2) defect: halving h divides it by about 4
      CHECK(rate <= 6.0);
    }
    prev_defect = defect;
  }
}

TEST_CASE("interface polyline on the waterdrop closes through the cusp") {
  const LevelSet ls = waterdrop_levelset();
  const Mesh mesh = build_mesh(32);
  const Classification cls = classify_elements(mesh, ls);
  const InterfaceMesh im = extract_interface_polyline(mesh, cls, ls);
  REQUIRE(im.size() > 0);
  for (int s = 0; s < im.size(); ++s) CHECK(dist(im.b[s], im.a[(s + 1) % im.size()]) <= 1e-12);
  // nearest_segment agrees with a brute-force scan
  const Vec2 x{0.4, 0.3};
  const int s = im.nearest_segment(x);
  double best = 1e9;
  int bi = -1;
  for (int k = 0; k < im.size(); ++k)
    if (dist(x, im.midpoint[k]) < best) best = dist(x, im.midpoint[k]), bi = k;
  CHECK(s == bi);
}
