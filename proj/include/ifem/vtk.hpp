#pragma once

// Legacy ASCII VTK writers for the mesh with nodal fields and for the
// interface polyline with per-segment data.

#include <string>
#include <utility>
#include <vector>

#include "ifem/mesh.hpp"

namespace ifem {

using NamedField = std::pair<std::string, std::vector<double>>;

void write_vtk_mesh(const std::string& path, const Mesh& mesh,
                    const std::vector<NamedField>& point_fields);

void write_vtk_interface(const std::string& path, const InterfaceMesh& im,
                         const std::vector<NamedField>& segment_fields);

}  // namespace ifem
