#include <array>
#include <cmath>
#include <vector>

#include "element.hpp"
#include "hvi/fem.hpp"

namespace hvi {

using detail::P1Element;

Vec assemble_dg_residual(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u, Execution exec) {
  if (exec == Execution::serial) return reference::assemble_dg_residual(mesh, material, u);
  detail::check_size(mesh, u);
  const int nt = mesh.num_triangles();
  std::vector<std::array<double, 3>> local(nt);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < nt; ++t) local[t] = detail::residual_local(detail::p1_element(mesh, t), material, u);
  // Scatter in triangle order so the sum matches the serial loop bit for bit.
  Vec r = Vec::Zero(mesh.num_vertices());
  for (int t = 0; t < nt; ++t)
    for (int a = 0; a < 3; ++a) r[mesh.triangles[t][a]] += local[t][a];
  return r;
}

SparseMat assemble_dg_tangent(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u, Execution exec) {
  if (exec == Execution::serial) return reference::assemble_dg_tangent(mesh, material, u);
  detail::check_size(mesh, u);
  const int nt = mesh.num_triangles();
  std::vector<std::array<std::array<double, 3>, 3>> local(nt);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < nt; ++t) local[t] = detail::tangent_local(detail::p1_element(mesh, t), material, u);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) trip.emplace_back(mesh.triangles[t][a], mesh.triangles[t][b], local[t][a][b]);
  SparseMat T(mesh.num_vertices(), mesh.num_vertices());
  T.setFromTriplets(trip.begin(), trip.end());
  return T;
}

double assemble_dg_energy(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u) {
  detail::check_size(mesh, u);
  double G = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const P1Element e = detail::p1_element(mesh, t);
    G += e.area * energy_density(material, detail::element_gradient(e, u).norm());
  }
  return G;
}

Vec assemble_load(const Mesh2D& mesh, const std::function<double(const Point2&)>& f0) {
  Vec l = Vec::Zero(mesh.num_vertices());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = triangle_area(mesh, t);
    // Edge-midpoint rule, exact for quadratics. phi_a is 1/2 at the two
    // midpoints adjacent to vertex a.
    const std::array<Point2, 3> mid = {0.5 * (mesh.vertices[tri[0]] + mesh.vertices[tri[1]]),
                                       0.5 * (mesh.vertices[tri[1]] + mesh.vertices[tri[2]]),
                                       0.5 * (mesh.vertices[tri[2]] + mesh.vertices[tri[0]])};
    const std::array<double, 3> fm = {f0(mid[0]), f0(mid[1]), f0(mid[2])};
    l[tri[0]] += area / 3.0 * 0.5 * (fm[0] + fm[2]);
    l[tri[1]] += area / 3.0 * 0.5 * (fm[0] + fm[1]);
    l[tri[2]] += area / 3.0 * 0.5 * (fm[1] + fm[2]);
  }
  return l;
}

Vec assemble_boundary_load(const Mesh2D& mesh, const std::function<double(const Point2&, const Point2&)>& t0) {
  // 4-point Gauss-Legendre on [0, 1].
  static constexpr std::array<double, 4> xs = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281,
                                               0.9305681557970263};
  static constexpr std::array<double, 4> ws = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                                               0.1739274225687269};
  const int nb = mesh.num_boundary_nodes();
  Vec b = Vec::Zero(nb);
  for (int k = 0; k < nb; ++k) {
    const auto& e = mesh.boundary_edges[k];
    const Point2 &pa = mesh.vertices[e.a], &pb = mesh.vertices[e.b];
    const double L = (pb - pa).norm();
    const Point2 n = edge_normal(mesh, k);
    for (int q = 0; q < 4; ++q) {
      const double val = t0(pa + xs[q] * (pb - pa), n) * ws[q] * L;
      b[k] += val * (1.0 - xs[q]);
      b[(k + 1) % nb] += val * xs[q];
    }
  }
  return b;
}

double compatibility_integral(const Mesh2D& mesh, const ProblemData& data) {
  return assemble_load(mesh, data.f0).sum() + assemble_boundary_load(mesh, data.t0).sum();
}

SparseMat stiffness_matrix(const Mesh2D& mesh) {
  return assemble_dg_tangent(mesh, linear_material(), Vec::Zero(mesh.num_vertices()));
}

SparseMat mass_matrix(const Mesh2D& mesh) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = triangle_area(mesh, t);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        trip.emplace_back(mesh.triangles[t][a], mesh.triangles[t][b], area / 12.0 * (a == b ? 2.0 : 1.0));
  }
  SparseMat M(mesh.num_vertices(), mesh.num_vertices());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Mat boundary_mass_matrix(const Mesh2D& mesh) {
  const int nb = mesh.num_boundary_nodes();
  Mat M = Mat::Zero(nb, nb);
  for (int k = 0; k < nb; ++k) {
    const auto& e = mesh.boundary_edges[k];
    const double L = (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
    const int j = (k + 1) % nb;
    M(k, k) += L / 3.0;
    M(j, j) += L / 3.0;
    M(k, j) += L / 6.0;
    M(j, k) += L / 6.0;
  }
  return M;
}

Vec TraceMap::apply(const Vec& u) const {
  Vec w(num_boundary());
  for (int k = 0; k < num_boundary(); ++k) w[k] = u[boundary_to_vertex[k]];
  return w;
}

Vec TraceMap::apply_transpose(const Vec& w) const {
  Vec u = Vec::Zero(num_vertices);
  for (int k = 0; k < num_boundary(); ++k) u[boundary_to_vertex[k]] += w[k];
  return u;
}

TraceMap make_trace(const Mesh2D& mesh) { return {boundary_vertices(mesh), mesh.num_vertices()}; }

SparseMat trace_matrix(const Mesh2D& mesh) {
  const auto bv = boundary_vertices(mesh);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t k = 0; k < bv.size(); ++k) trip.emplace_back(static_cast<int>(k), bv[k], 1.0);
  SparseMat G(static_cast<int>(bv.size()), mesh.num_vertices());
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

}  // namespace hvi
