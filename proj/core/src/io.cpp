#include "surfgrf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace surfgrf {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void write_vtk_header(std::ostream& out, const SurfaceMesh& mesh) {
  out << "# vtk DataFile Version 3.0\n";
  out << "surfgrf surface mesh (level " << mesh.level << ")\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertices.size() << " double\n";
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  out << "CELLS " << mesh.quads.size() << " " << 5 * mesh.quads.size() << "\n";
  for (const auto& q : mesh.quads)
    out << "4 " << q[0] << " " << q[1] << " " << q[2] << " " << q[3] << "\n";
  out << "CELL_TYPES " << mesh.quads.size() << "\n";
  for (std::size_t i = 0; i < mesh.quads.size(); ++i) out << "9\n";  // VTK_QUAD
}

}  // namespace

void export_mesh_vtk(const SurfaceMesh& mesh, const std::string& path) {
  auto out = open_or_throw(path);
  write_vtk_header(out, mesh);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void export_field_vtk(const SurfaceMesh& mesh, const Vector& field,
                      const std::string& path, const std::string& field_name) {
  if (field.size() != static_cast<Eigen::Index>(mesh.vertices.size()))
    throw std::invalid_argument("field length != vertex count");
  auto out = open_or_throw(path);
  write_vtk_header(out, mesh);
  out << "POINT_DATA " << mesh.vertices.size() << "\n";
  out << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
  char buf[48];
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", field[i]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string format_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

void export_csv(const CsvTable& table, const std::string& path) {
  auto out = open_or_throw(path);
  out << to_csv(table);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace surfgrf
