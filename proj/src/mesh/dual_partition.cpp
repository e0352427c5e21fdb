#include <cmath>
#include <numeric>

#include "hvi/mesh.hpp"

namespace hvi {

std::vector<double> DualPartition::cell_lengths() const {
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.length);
  return out;
}

double DualPartition::total_length() const {
  double s = 0.0;
  for (const auto& c : cells) s += c.length;
  return s;
}

DualPartition dual_partition(const Mesh2D& mesh) {
  const int nb = mesh.num_boundary_nodes();
  const auto& edges = mesh.boundary_edges;
  auto is_s = [&](int k) { return edges[((k % nb) + nb) % nb].label == Label::S; };
  auto len = [&](int k) { return (mesh.vertices[edges[k].b] - mesh.vertices[edges[k].a]).norm(); };

  // Start the sweep at the beginning of an S arc so arcs stay contiguous.
  int start = 0;
  for (int k = 0; k < nb; ++k) {
    if (is_s(k) && !is_s(k - 1)) {
      start = k;
      break;
    }
  }

  DualPartition dual;
  double arc = 0.0;
  for (int step = 0; step < nb; ++step) {
    const int node = (start + step) % nb;  // boundary node `node` starts edge `node`
    const int in_edge = (node + nb - 1) % nb;
    const int out_edge = node;
    const bool in_s = is_s(in_edge), out_s = is_s(out_edge);
    if (!in_s && !out_s) continue;
    DualCell c;
    c.boundary_node = node;
    c.vertex = edges[node].a;
    c.position = mesh.vertices[c.vertex];
    c.left_edge = in_s ? in_edge : -1;
    c.right_edge = out_s ? out_edge : -1;
    Point2 n{0.0, 0.0};
    if (in_s) {
      c.length += 0.5 * len(in_edge);
      n += edge_normal(mesh, in_edge);
      arc += 0.5 * len(in_edge);
    }
    c.arc = arc;
    if (out_s) {
      c.length += 0.5 * len(out_edge);
      n += edge_normal(mesh, out_edge);
      arc += 0.5 * len(out_edge);
    }
    c.normal = n.normalized();
    dual.cells.push_back(c);
  }
  return dual;
}

std::vector<double> interpolate_pc(std::span<const double> v_nodal, const DualPartition& dual) {
  if (v_nodal.size() != dual.cells.size())
    throw std::invalid_argument("interpolate_pc: nodal vector length does not match the number of Gamma_s nodes");
  return {v_nodal.begin(), v_nodal.end()};
}

double pc_norm_l2(std::span<const double> cell_values, const DualPartition& dual) {
  if (cell_values.size() != dual.cells.size())
    throw std::invalid_argument("pc_norm_l2: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < cell_values.size(); ++i) s += dual.cells[i].length * cell_values[i] * cell_values[i];
  return std::sqrt(s);
}

namespace {

// Calls f(edge, left value, right value) for each Gamma_s edge.
template <class F>
void for_each_s_edge(const Mesh2D& mesh, const DualPartition& dual, std::span<const double> v, F&& f) {
  if (v.size() != dual.cells.size()) throw std::invalid_argument("Gamma_s nodal vector length mismatch");
  std::vector<int> node_to_cell(mesh.num_boundary_nodes(), -1);
  for (int i = 0; i < dual.size(); ++i) node_to_cell[dual.cells[i].boundary_node] = i;
  const int nb = mesh.num_boundary_nodes();
  for (int k = 0; k < nb; ++k) {
    if (mesh.boundary_edges[k].label != Label::S) continue;
    const int ia = node_to_cell[k], ib = node_to_cell[(k + 1) % nb];
    const double L = (mesh.vertices[mesh.boundary_edges[k].b] - mesh.vertices[mesh.boundary_edges[k].a]).norm();
    f(L, v[ia], v[ib]);
  }
}

}  // namespace

double pc_interpolation_error_l2(const Mesh2D& mesh, const DualPartition& dual, std::span<const double> v_nodal) {
  double s = 0.0;
  // Each half edge contributes (b - a)^2 L / 24.
  for_each_s_edge(mesh, dual, v_nodal, [&](double L, double a, double b) { s += (b - a) * (b - a) * L / 12.0; });
  return std::sqrt(s);
}

double p1_norm_l2_gamma_s(const Mesh2D& mesh, const DualPartition& dual, std::span<const double> v_nodal) {
  double s = 0.0;
  for_each_s_edge(mesh, dual, v_nodal, [&](double L, double a, double b) { s += L * (a * a + a * b + b * b) / 3.0; });
  return std::sqrt(s);
}

}  // namespace hvi
