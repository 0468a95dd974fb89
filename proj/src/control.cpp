#include "ifem/control.hpp"

#include <cstdio>
#include <stdexcept>

#include "ifem/quadrature.hpp"

namespace ifem {

std::vector<double> midpoint_interpolate(const InterfaceMesh& im,
                                         const std::function<double(Vec2)>& f) {
  std::vector<double> v(im.size());
  for (int s = 0; s < im.size(); ++s) v[s] = f(im.midpoint[s]);
  return v;
}

std::vector<double> l2_project_segments(const InterfaceMesh& im,
                                        const std::function<double(Vec2)>& f, int order) {
  std::vector<double> v(im.size());
  for (int s = 0; s < im.size(); ++s) {
    const SegmentQuadrature quad = segment_quadrature(im.a[s], im.b[s], order);
    double sum = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q)
      sum += quad.weights[q] * f(quad.points[q]);
    v[s] = sum / im.length[s];
  }
  return v;
}

std::function<double(Vec2)> postprocess_control(double alpha, const Bounds& bounds,
                                                std::function<double(Vec2)> shift,
                                                std::function<double(Vec2)> adjoint) {
  if (!(alpha > 0.0)) throw std::invalid_argument("postprocess_control: alpha must be positive");
  return [alpha, bounds, shift = std::move(shift), adjoint = std::move(adjoint)](Vec2 x) {
    return project_box(shift(x) - adjoint(x) / alpha, bounds);
  };
}

void write_control_csv(const std::string& path, const InterfaceMesh& im,
                       const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != im.size())
    throw std::invalid_argument("write_control_csv: one value per segment required");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_control_csv: cannot open " + path);
  std::fprintf(f, "segment_index,midpoint_x,midpoint_y,value\n");
  for (int s = 0; s < im.size(); ++s)
    std::fprintf(f, "%d,%.17g,%.17g,%.17g\n", s, im.midpoint[s].x, im.midpoint[s].y,
                 values[s]);
  std::fclose(f);
}

}  // namespace ifem
