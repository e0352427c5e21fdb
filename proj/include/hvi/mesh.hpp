#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "hvi/common.hpp"

namespace hvi {

enum class Label : char { S = 'S', T = 'T' };

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  Label label = Label::T;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conforming triangulation of a simply connected polygon. Boundary edges are
/// stored in counterclockwise loop order; edge k starts at boundary node k.
struct Mesh2D {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double h = 0.0;
  int level = 0;

  // Filled by refine_uniform: vertices [coarse_vertex_count, n) are edge
  // midpoints of the parent mesh, with their two parent vertices.
  int coarse_vertex_count = 0;
  std::vector<std::array<int, 2>> midpoint_parents;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_boundary_nodes() const { return static_cast<int>(boundary_edges.size()); }
};

Mesh2D build_polygon_mesh(std::span<const Point2> polygon, double h_target,
                          std::span<const Label> side_labels);

/// Red refinement: every triangle is split into four similar children.
Mesh2D refine_uniform(const Mesh2D& mesh);

/// Throws MeshError if any Mesh2D invariant is violated.
void validate_mesh(const Mesh2D& mesh);

double triangle_area(const Mesh2D& mesh, int t);
double triangle_diameter(const Mesh2D& mesh, int t);
double max_diameter(const Mesh2D& mesh);
double quasi_uniformity_ratio(const Mesh2D& mesh);
/// Diameter of the boundary vertex set.
double boundary_diameter(const Mesh2D& mesh);
double boundary_length(const Mesh2D& mesh, Label label);

/// Boundary node k -> vertex index, in loop order.
std::vector<int> boundary_vertices(const Mesh2D& mesh);

/// Outward unit normal of boundary edge k.
Point2 edge_normal(const Mesh2D& mesh, int k);

Mesh2D scale_mesh(const Mesh2D& mesh, double factor);

/// Prolongates P1 nodal values from the parent of `fine` (one red refinement).
Vec prolongate(const Mesh2D& fine, const Vec& coarse_values);

void write_mesh(std::ostream& out, const Mesh2D& mesh);
Mesh2D read_mesh(std::istream& in);

// Dual partition of Gamma_s built from edge midpoints.

struct DualCell {
  int boundary_node = 0;  // index into the boundary loop
  int vertex = 0;
  int left_edge = -1;     // incoming S edge, -1 at an arc start
  int right_edge = -1;    // outgoing S edge, -1 at an arc end
  double length = 0.0;
  double arc = 0.0;       // arc-length position of the node along Gamma_s
  Point2 position{0.0, 0.0};
  Point2 normal{0.0, 0.0};
};

struct DualPartition {
  std::vector<DualCell> cells;

  int size() const { return static_cast<int>(cells.size()); }
  std::vector<double> cell_lengths() const;
  double total_length() const;
};

DualPartition dual_partition(const Mesh2D& mesh);

/// Piecewise-constant Lagrange interpolation: cell i takes the nodal value at
/// its node.
std::vector<double> interpolate_pc(std::span<const double> v_nodal, const DualPartition& dual);

double pc_norm_l2(std::span<const double> cell_values, const DualPartition& dual);

/// Exact ||L_h v - v||_{L2(Gamma_s)} for P1 data on the Gamma_s nodes.
double pc_interpolation_error_l2(const Mesh2D& mesh, const DualPartition& dual,
                                 std::span<const double> v_nodal);

/// ||v||_{L2(Gamma_s)} of the P1 function with the given Gamma_s nodal values,
/// integrated over Gamma_s edges only.
double p1_norm_l2_gamma_s(const Mesh2D& mesh, const DualPartition& dual,
                          std::span<const double> v_nodal);

}  // namespace hvi
