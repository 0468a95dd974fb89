#include "ifem/vtk.hpp"

#include <cstdio>
#include <stdexcept>

namespace ifem {

namespace {

std::FILE* open_or_throw(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("vtk writer: cannot open " + path);
  return f;
}

}  // namespace

void write_vtk_mesh(const std::string& path, const Mesh& mesh,
                    const std::vector<NamedField>& point_fields) {
  for (const auto& [name, values] : point_fields)
    if (values.size() != mesh.nodes.size())
      throw std::invalid_argument("write_vtk_mesh: field '" + name + "' has wrong size");

  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "# vtk DataFile Version 3.0\nmesh\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %zu double\n", mesh.nodes.size());
  for (const Vec2& p : mesh.nodes) std::fprintf(f, "%.17g %.17g 0\n", p.x, p.y);
  std::fprintf(f, "CELLS %zu %zu\n", mesh.elements.size(), 4 * mesh.elements.size());
  for (const auto& t : mesh.elements) std::fprintf(f, "3 %d %d %d\n", t[0], t[1], t[2]);
  std::fprintf(f, "CELL_TYPES %zu\n", mesh.elements.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) std::fprintf(f, "5\n");
  if (!point_fields.empty()) {
    std::fprintf(f, "POINT_DATA %zu\n", mesh.nodes.size());
    for (const auto& [name, values] : point_fields) {
      std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name.c_str());
      for (double v : values) std::fprintf(f, "%.17g\n", v);
    }
  }
  std::fclose(f);
}

void write_vtk_interface(const std::string& path, const InterfaceMesh& im,
                         const std::vector<NamedField>& segment_fields) {
  for (const auto& [name, values] : segment_fields)
    if (static_cast<int>(values.size()) != im.size())
      throw std::invalid_argument("write_vtk_interface: field '" + name + "' has wrong size");

  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "# vtk DataFile Version 3.0\ninterface\nASCII\nDATASET POLYDATA\n");
  std::fprintf(f, "POINTS %d double\n", 2 * im.size());
  for (int s = 0; s < im.size(); ++s) {
    std::fprintf(f, "%.17g %.17g 0\n", im.a[s].x, im.a[s].y);
    std::fprintf(f, "%.17g %.17g 0\n", im.b[s].x, im.b[s].y);
  }
  std::fprintf(f, "LINES %d %d\n", im.size(), 3 * im.size());
  for (int s = 0; s < im.size(); ++s) std::fprintf(f, "2 %d %d\n", 2 * s, 2 * s + 1);
  if (!segment_fields.empty()) {
    std::fprintf(f, "CELL_DATA %d\n", im.size());
    for (const auto& [name, values] : segment_fields) {
      std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name.c_str());
      for (double v : values) std::fprintf(f, "%.17g\n", v);
    }
  }
  std::fclose(f);
}

}  // namespace ifem
