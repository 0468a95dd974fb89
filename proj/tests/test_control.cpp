#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ifem/control.hpp"
#include "ifem/geometry.hpp"
#include "ifem/mesh.hpp"

using namespace ifem;

namespace {

InterfaceMesh circle_interface(int n) {
  const LevelSet ls = circle_levelset({0.0, 0.0}, 0.6);
  const Mesh mesh = build_mesh(n);
  const Classification cls = classify_elements(mesh, ls);
  return extract_interface_polyline(mesh, cls, ls);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("box projection clamps only when bounds are active") {
  Bounds off;
  CHECK(project_box(-12.5, off) == -12.5);
  CHECK(project_box(7.0, off) == 7.0);

  Bounds box{true, 0.0, 1.0};
  CHECK(project_box(-0.5, box) == 0.0);
  CHECK(project_box(0.25, box) == 0.25);
  CHECK(project_box(1.5, box) == 1.0);
  CHECK(project_box(0.0, box) == 0.0);
  CHECK(project_box(1.0, box) == 1.0);
}

TEST_CASE("midpoint interpolation samples segment midpoints") {
  const InterfaceMesh im = circle_interface(16);
  REQUIRE(im.size() > 0);
  const auto f = [](Vec2 x) { return 3.0 * x.x - 2.0 * x.y + 0.5; };
  const std::vector<double> v = midpoint_interpolate(im, f);
  REQUIRE(v.size() == im.size());
  for (std::size_t s = 0; s < im.size(); ++s) {
    CHECK(v[s] == doctest::Approx(f(im.midpoint[s])).epsilon(1e-14));
  }
}

TEST_CASE("segment means of an affine function equal its midpoint values") {
  // The mean of a linear function over a straight segment is its value at the
  // segment midpoint, so both projections must coincide to round-off.
  const InterfaceMesh im = circle_interface(16);
  const auto f = [](Vec2 x) { return 1.5 * x.x + 0.25 * x.y - 2.0; };
  const std::vector<double> mean = l2_project_segments(im, f);
  const std::vector<double> mid = midpoint_interpolate(im, f);
  REQUIRE(mean.size() == mid.size());
  for (std::size_t s = 0; s < mean.size(); ++s) {
    CHECK(mean[s] == doctest::Approx(mid[s]).epsilon(1e-12));
  }
}

TEST_CASE("segment means integrate a quadratic better than midpoint sampling") {
  const InterfaceMesh im = circle_interface(32);
  const auto f = [](Vec2 x) { return x.x * x.x + 4.0 * x.y * x.y; };
  const std::vector<double> mean = l2_project_segments(im, f, 3);
  // Third-order Gauss quadrature is exact for quadratics along the chord, so
  // the projected value must match a high-order reference quadrature.
  const std::vector<double> ref = l2_project_segments(im, f, 5);
  for (std::size_t s = 0; s < mean.size(); ++s) {
    CHECK(mean[s] == doctest::Approx(ref[s]).epsilon(1e-13));
  }
}

TEST_CASE("control recovery composes shift, adjoint scaling and clipping") {
  const Bounds box{true, 0.0, 1.0};
  constexpr double pi = 3.14159265358979323846;
  const auto shift = [pi](Vec2 x) { return std::sin(2.0 * pi * x.x); };
  const auto adjoint = [](Vec2 x) { return 0.3 * x.y; };

  const auto u = postprocess_control(2.0, box, shift, adjoint);
  const Vec2 a{0.2, 0.4};   // sin(0.4*pi) - 0.06 = 0.891, interior
  const Vec2 b{0.8, -1.0};  // sin(1.6*pi) + 0.15 < 0, clipped at 0
  const Vec2 c{0.25, -4.0}; // 1 + 0.6 > 1, clipped at 1
  CHECK(u(a) == doctest::Approx(std::sin(0.4 * pi) - 0.3 * 0.4 / 2.0).epsilon(1e-14));
  CHECK(u(b) == 0.0);
  CHECK(u(c) == 1.0);

  Bounds off;
  const auto free = postprocess_control(2.0, off, shift, adjoint);
  CHECK(free(c) == doctest::Approx(std::sin(0.5 * pi) + 0.6).epsilon(1e-14));
}

TEST_CASE("control CSV lists every segment and is byte-deterministic") {
  const InterfaceMesh im = circle_interface(8);
  std::vector<double> values(im.size());
  for (std::size_t s = 0; s < values.size(); ++s) values[s] = 0.125 * static_cast<double>(s);

  const std::string path = "control_test.csv";
  write_control_csv(path, im, values);
  const std::string first = read_file(path);
  write_control_csv(path, im, values);
  const std::string second = read_file(path);
  CHECK(first == second);

  std::istringstream in(first);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "segment_index,midpoint_x,midpoint_y,value");
  std::size_t rows = 0;
  double max_dx = 0.0, max_dv = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::size_t idx;
    double mx, my, val;
    REQUIRE((row >> idx >> mx >> my >> val));
    REQUIRE(idx < im.size());
    max_dx = std::max(max_dx, std::abs(mx - im.midpoint[idx].x) + std::abs(my - im.midpoint[idx].y));
    max_dv = std::max(max_dv, std::abs(val - values[idx]));
    ++rows;
  }
  CHECK(rows == im.size());
  CHECK(max_dx <= 1e-12);
  CHECK(max_dv <= 1e-12);
  std::remove(path.c_str());
}
