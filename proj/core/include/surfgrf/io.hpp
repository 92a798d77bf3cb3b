#pragma once

#include <string>
#include <vector>

#include "surfgrf/fem.hpp"
#include "surfgrf/mesh.hpp"

namespace surfgrf {

/// Legacy ASCII VTK 3.0 export of the quad mesh, optionally with one
/// POINT_DATA scalar field over the vertices.
void export_mesh_vtk(const SurfaceMesh& mesh, const std::string& path);
void export_field_vtk(const SurfaceMesh& mesh, const Vector& field,
                      const std::string& path,
                      const std::string& field_name = "u");

/// CSV with a header row; cells formatted with 6 significant digits
/// (integers verbatim).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_cell(double value);
std::string to_csv(const CsvTable& table);
void export_csv(const CsvTable& table, const std::string& path);

}  // namespace surfgrf
