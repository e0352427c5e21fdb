#include "hvi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <omp.h>
#include <utility>

namespace hvi {

void set_thread_count(int n) { omp_set_num_threads(std::max(1, n)); }
int thread_count() { return omp_get_max_threads(); }

namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(std::span<const Point2> poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * s;
}

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = cross(b - a, c - a);
  const double scale = (b - a).norm() * (c - a).norm();
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) - 1e-14 <= p.x() && p.x() <= std::max(a.x(), b.x()) + 1e-14 &&
         std::min(a.y(), b.y()) - 1e-14 <= p.y() && p.y() <= std::max(a.y(), b.y()) + 1e-14;
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) {
  const int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void check_polygon(std::span<const Point2> poly, std::span<const Label> labels) {
  const std::size_t n = poly.size();
  if (n < 3) throw MeshError("polygon needs at least 3 vertices");
  if (labels.size() != n) throw MeshError("labeling rule must assign one label per polygon side");
  for (std::size_t i = 0; i < n; ++i) {
    if ((poly[(i + 1) % n] - poly[i]).norm() == 0.0) throw MeshError("polygon has a zero-length side");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        throw MeshError("polygon is not simple: sides " + std::to_string(i) + " and " +
                        std::to_string(j) + " intersect");
    }
  }
  if (signed_area(poly) <= 0.0) throw MeshError("polygon must be counterclockwise");
  const bool has_s = std::find(labels.begin(), labels.end(), Label::S) != labels.end();
  const bool has_t = std::find(labels.begin(), labels.end(), Label::T) != labels.end();
  if (!has_s) throw MeshError("labeling rule leaves Gamma_s empty");
  if (!has_t) throw MeshError("labeling rule leaves Gamma_t empty");
}

bool is_axis_rectangle(std::span<const Point2> poly) {
  if (poly.size() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 d = poly[(i + 1) % 4] - poly[i];
    if (d.x() != 0.0 && d.y() != 0.0) return false;
  }
  return true;
}

void structured_rectangle(std::span<const Point2> poly, double h_target, Mesh2D& mesh) {
  double x0 = poly[0].x(), x1 = x0, y0 = poly[0].y(), y1 = y0;
  for (const auto& p : poly) {
    x0 = std::min(x0, p.x()); x1 = std::max(x1, p.x());
    y0 = std::min(y0, p.y()); y1 = std::max(y1, p.y());
  }
  // Cell diagonal <= h_target.
  const int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) * std::sqrt(2.0) / h_target - 1e-12)));
  const int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) * std::sqrt(2.0) / h_target - 1e-12)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.emplace_back(x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
}

bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  return cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0;
}

void ear_clip(std::span<const Point2> poly, Mesh2D& mesh) {
  mesh.vertices.assign(poly.begin(), poly.end());
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int ip = idx[(i + n - 1) % n], ic = idx[i], in = idx[(i + 1) % n];
      const Point2 &a = poly[ip], &b = poly[ic], &c = poly[in];
      if (cross(b - a, c - b) <= 0) continue;  // reflex or degenerate
      bool empty = true;
      for (std::size_t k = 0; k < n && empty; ++k) {
        const int q = idx[k];
        if (q == ip || q == ic || q == in) continue;
        if (point_in_triangle(poly[q], a, b, c)) empty = false;
      }
      if (!empty) continue;
      mesh.triangles.push_back({ip, ic, in});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw MeshError("ear clipping failed; polygon is degenerate");
  }
  mesh.triangles.push_back({idx[0], idx[1], idx[2]});
}

using EdgeKey = std::pair<int, int>;
EdgeKey key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Chains the edges used by exactly one triangle into a loop starting at
// `start_vertex`, oriented as in the (counterclockwise) triangles.
std::vector<std::array<int, 2>> extract_boundary_loop(const Mesh2D& mesh, int start_vertex) {
  std::map<EdgeKey, int> count;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) ++count[key(t[e], t[(e + 1) % 3])];
  std::map<int, int> next;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      if (count[key(a, b)] == 1) {
        if (next.count(a)) throw MeshError("boundary is not a single simple loop");
        next[a] = b;
      }
    }
  }
  std::vector<std::array<int, 2>> loop;
  int cur = start_vertex;
  do {
    auto it = next.find(cur);
    if (it == next.end()) throw MeshError("boundary loop is broken");
    loop.push_back({cur, it->second});
    cur = it->second;
  } while (cur != start_vertex && loop.size() <= next.size());
  if (loop.size() != next.size()) throw MeshError("boundary has more than one loop");
  return loop;
}

Label label_for_edge(std::span<const Point2> poly, std::span<const Label> labels, const Point2& mid) {
  const std::size_t n = poly.size();
  double best = 1e300;
  Label lab = Label::T;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const Point2 d = b - a;
    const double t = std::clamp((mid - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    const double dist = (a + t * d - mid).norm();
    if (dist < best) {
      best = dist;
      lab = labels[i];
    }
  }
  return lab;
}

int find_vertex(const Mesh2D& mesh, const Point2& p) {
  for (int i = 0; i < mesh.num_vertices(); ++i)
    if ((mesh.vertices[i] - p).norm() <= 1e-12 * (1.0 + p.norm())) return i;
  throw MeshError("polygon vertex not found in triangulation");
}

}  // namespace

Mesh2D build_polygon_mesh(std::span<const Point2> polygon, double h_target,
                          std::span<const Label> side_labels) {
  if (!(h_target > 0.0)) throw MeshError("h_target must be positive");
  check_polygon(polygon, side_labels);
  Mesh2D mesh;
  if (is_axis_rectangle(polygon)) {
    structured_rectangle(polygon, h_target, mesh);
  } else {
    ear_clip(polygon, mesh);
  }
  const auto loop = extract_boundary_loop(mesh, find_vertex(mesh, polygon[0]));
  for (const auto& e : loop) {
    const Point2 mid = 0.5 * (mesh.vertices[e[0]] + mesh.vertices[e[1]]);
    mesh.boundary_edges.push_back({e[0], e[1], label_for_edge(polygon, side_labels, mid)});
  }
  mesh.h = max_diameter(mesh);
  mesh.level = 0;
  mesh.coarse_vertex_count = mesh.num_vertices();
  while (mesh.h > h_target * (1.0 + 1e-12)) {
    mesh = refine_uniform(mesh);
    mesh.level = 0;
  }
  mesh.coarse_vertex_count = mesh.num_vertices();
  mesh.midpoint_parents.clear();
  validate_mesh(mesh);
  return mesh;
}

Mesh2D refine_uniform(const Mesh2D& mesh) {
  Mesh2D fine;
  fine.vertices = mesh.vertices;
  fine.coarse_vertex_count = mesh.num_vertices();
  std::map<EdgeKey, int> mid;
  auto midpoint = [&](int a, int b) {
    const EdgeKey k = key(a, b);
    auto it = mid.find(k);
    if (it != mid.end()) return it->second;
    const int id = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    fine.midpoint_parents.push_back({k.first, k.second});
    mid.emplace(k, id);
    return id;
  };
  fine.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const int a = t[0], b = t[1], c = t[2];
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    fine.triangles.push_back({a, ab, ca});
    fine.triangles.push_back({ab, b, bc});
    fine.triangles.push_back({ca, bc, c});
    fine.triangles.push_back({ab, bc, ca});
  }
  for (const auto& e : mesh.boundary_edges) {
    const int m = midpoint(e.a, e.b);
    fine.boundary_edges.push_back({e.a, m, e.label});
    fine.boundary_edges.push_back({m, e.b, e.label});
  }
  fine.h = max_diameter(fine);
  fine.level = mesh.level + 1;
  return fine;
}

void validate_mesh(const Mesh2D& mesh) {
  const int nv = mesh.num_vertices();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= nv) throw MeshError("triangle " + std::to_string(t) + " has an invalid vertex index");
    if (!(triangle_area(mesh, t) > 0.0))
      throw MeshError("triangle " + std::to_string(t) + " has non-positive signed area");
  }
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) ++directed[{t[e], t[(e + 1) % 3]}];
  std::map<std::pair<int, int>, int> expected_boundary;
  for (const auto& [d, c] : directed) {
    if (c != 1) throw MeshError("edge is traversed twice in the same direction");
    if (!directed.count({d.second, d.first})) expected_boundary[d] = 1;
  }
  const int nb = mesh.num_boundary_nodes();
  if (static_cast<std::size_t>(nb) != expected_boundary.size())
    throw MeshError("boundary edge list does not match the triangulation (hanging nodes or missing edges)");
  bool has_s = false, has_t = false;
  for (int k = 0; k < nb; ++k) {
    const auto& e = mesh.boundary_edges[k];
    if (!expected_boundary.count({e.a, e.b})) throw MeshError("boundary edge " + std::to_string(k) + " is not a counterclockwise boundary edge");
    if (e.b != mesh.boundary_edges[(k + 1) % nb].a) throw MeshError("boundary edges do not form a loop");
    if (e.label == Label::S) has_s = true;
    else if (e.label == Label::T) has_t = true;
    else throw MeshError("boundary edge has an invalid label");
  }
  if (!has_s || !has_t) throw MeshError("both Gamma_s and Gamma_t must be nonempty");
}

double triangle_area(const Mesh2D& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Point2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
  return 0.5 * cross(b - a, c - a);
}

double triangle_diameter(const Mesh2D& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Point2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
  return std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
}

double max_diameter(const Mesh2D& mesh) {
  double h = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) h = std::max(h, triangle_diameter(mesh, t));
  return h;
}

double quasi_uniformity_ratio(const Mesh2D& mesh) {
  double lo = 1e300, hi = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double d = triangle_diameter(mesh, t);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

double boundary_diameter(const Mesh2D& mesh) {
  const auto bv = boundary_vertices(mesh);
  double d = 0.0;
  for (std::size_t i = 0; i < bv.size(); ++i)
    for (std::size_t j = i + 1; j < bv.size(); ++j)
      d = std::max(d, (mesh.vertices[bv[i]] - mesh.vertices[bv[j]]).norm());
  return d;
}

double boundary_length(const Mesh2D& mesh, Label label) {
  double s = 0.0;
  for (const auto& e : mesh.boundary_edges)
    if (e.label == label) s += (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
  return s;
}

std::vector<int> boundary_vertices(const Mesh2D& mesh) {
  std::vector<int> bv;
  bv.reserve(mesh.boundary_edges.size());
  for (const auto& e : mesh.boundary_edges) bv.push_back(e.a);
  return bv;
}

Point2 edge_normal(const Mesh2D& mesh, int k) {
  const auto& e = mesh.boundary_edges[k];
  const Point2 d = (mesh.vertices[e.b] - mesh.vertices[e.a]).normalized();
  return {d.y(), -d.x()};
}

Mesh2D scale_mesh(const Mesh2D& mesh, double factor) {
  if (!(factor > 0.0)) throw MeshError("scale factor must be positive");
  Mesh2D out = mesh;
  for (auto& v : out.vertices) v *= factor;
  out.h = mesh.h * factor;
  return out;
}

Vec prolongate(const Mesh2D& fine, const Vec& coarse_values) {
  if (coarse_values.size() != fine.coarse_vertex_count)
    throw MeshError("prolongate: coarse vector length does not match the parent mesh");
  Vec out(fine.num_vertices());
  out.head(fine.coarse_vertex_count) = coarse_values;
  for (std::size_t i = 0; i < fine.midpoint_parents.size(); ++i) {
    const auto& p = fine.midpoint_parents[i];
    out[fine.coarse_vertex_count + static_cast<int>(i)] = 0.5 * (coarse_values[p[0]] + coarse_values[p[1]]);
  }
  return out;
}

}  // namespace hvi
