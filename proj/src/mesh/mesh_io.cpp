#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hvi/mesh.hpp"

namespace hvi {

namespace {

std::string next_line(std::istream& in, int& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw MeshError("mesh2d: unexpected end of input after line " + std::to_string(line_no));
  ++line_no;
  return line;
}

int read_block_header(std::istream& in, int& line_no, const std::string& name) {
  std::istringstream ls(next_line(in, line_no));
  std::string word, extra;
  long long n = -1;
  if (!(ls >> word >> n) || word != name || n < 0 || (ls >> extra))
    throw MeshError("mesh2d: line " + std::to_string(line_no) + ": expected \"" + name + " <count>\"");
  return static_cast<int>(n);
}

}  // namespace

void write_mesh(std::ostream& out, const Mesh2D& mesh) {
  const auto old_prec = out.precision(17);
  out << "mesh2d v1\n";
  out << "vertices " << mesh.vertices.size() << '\n';
  for (const auto& v : mesh.vertices) out << v.x() << ' ' << v.y() << '\n';
  out << "triangles " << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "bedges " << mesh.boundary_edges.size() << '\n';
  for (const auto& e : mesh.boundary_edges)
    out << e.a << ' ' << e.b << ' ' << static_cast<char>(e.label) << '\n';
  out.precision(old_prec);
}

Mesh2D read_mesh(std::istream& in) {
  int line_no = 0;
  if (next_line(in, line_no) != "mesh2d v1") throw MeshError("mesh2d: line 1: expected header \"mesh2d v1\"");
  Mesh2D mesh;
  const int nv = read_block_header(in, line_no, "vertices");
  for (int i = 0; i < nv; ++i) {
    std::istringstream ls(next_line(in, line_no));
    double x, y;
    std::string extra;
    if (!(ls >> x >> y) || (ls >> extra)) throw MeshError("mesh2d: line " + std::to_string(line_no) + ": expected \"x y\"");
    mesh.vertices.emplace_back(x, y);
  }
  const int nt = read_block_header(in, line_no, "triangles");
  for (int i = 0; i < nt; ++i) {
    std::istringstream ls(next_line(in, line_no));
    int a, b, c;
    std::string extra;
    if (!(ls >> a >> b >> c) || (ls >> extra)) throw MeshError("mesh2d: line " + std::to_string(line_no) + ": expected \"i j k\"");
    mesh.triangles.push_back({a, b, c});
  }
  const int nb = read_block_header(in, line_no, "bedges");
  for (int i = 0; i < nb; ++i) {
    std::istringstream ls(next_line(in, line_no));
    int a, b;
    std::string lab, extra;
    if (!(ls >> a >> b >> lab) || (ls >> extra) || (lab != "S" && lab != "T"))
      throw MeshError("mesh2d: line " + std::to_string(line_no) + ": expected \"i j S|T\"");
    mesh.boundary_edges.push_back({a, b, lab == "S" ? Label::S : Label::T});
  }
  std::string rest;
  while (std::getline(in, rest)) {
    ++line_no;
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      throw MeshError("mesh2d: line " + std::to_string(line_no) + ": trailing content");
  }
  validate_mesh(mesh);
  mesh.h = max_diameter(mesh);
  mesh.coarse_vertex_count = mesh.num_vertices();
  return mesh;
}

}  // namespace hvi
