#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "hvi/common.hpp"
#include "hvi/mesh.hpp"

namespace hvi {

using SparseMat = Eigen::SparseMatrix<double>;

/// Coefficient law of the interior operator div(p(|grad u|) grad u).
struct MaterialLaw {
  std::string name;
  std::function<double(double)> p;
  std::function<double(double)> dp;
  double p0 = 0.0;  // upper bound of p
};

MaterialLaw linear_material();       // p == 1
MaterialLaw rational_material();   // p(t) = 2 + 1/(1+t)
MaterialLaw material_by_name(const std::string& name);

/// g(t) = int_0^t s p(s) ds by adaptive Simpson (tol 1e-12).
double energy_density(const MaterialLaw& material, double t);

/// Sampled checks of the MaterialLaw invariants on [0, t_max]; throws
/// std::invalid_argument naming the first violated property.
void validate_material(const MaterialLaw& material, double t_max = 10.0, int samples = 200);

/// Data of the interface problem.
struct ProblemData {
  std::function<double(const Point2&)> f0;
  std::function<double(const Point2& x, const Point2& normal)> t0;
  std::function<double(const Point2&)> u0;
  MaterialLaw material;
};

/// int_Omega f0 + int_Gamma t0, by the same quadratures used for assembly.
double compatibility_integral(const Mesh2D& mesh, const ProblemData& data);

Vec assemble_dg_residual(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u,
                         Execution exec = Execution::parallel);
SparseMat assemble_dg_tangent(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u,
                              Execution exec = Execution::parallel);
/// G(u) = sum_T |T| g(|grad u|_T).
double assemble_dg_energy(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u);

Vec assemble_load(const Mesh2D& mesh, const std::function<double(const Point2&)>& f0);
/// Entry k: int_Gamma t0 phi_k over the boundary hat of boundary node k.
Vec assemble_boundary_load(const Mesh2D& mesh,
                           const std::function<double(const Point2&, const Point2&)>& t0);

SparseMat stiffness_matrix(const Mesh2D& mesh);
SparseMat mass_matrix(const Mesh2D& mesh);
/// P1 mass matrix of the boundary loop (boundary node numbering).
Mat boundary_mass_matrix(const Mesh2D& mesh);

/// Selection of boundary nodes out of the vertex vector (the trace).
struct TraceMap {
  std::vector<int> boundary_to_vertex;
  int num_vertices = 0;

  int num_boundary() const { return static_cast<int>(boundary_to_vertex.size()); }
  Vec apply(const Vec& u) const;
  Vec apply_transpose(const Vec& w) const;
};

TraceMap make_trace(const Mesh2D& mesh);
SparseMat trace_matrix(const Mesh2D& mesh);

namespace reference {
// Serial single-pass loops kept as the reference for the OpenMP kernels.
Vec assemble_dg_residual(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u);
SparseMat assemble_dg_tangent(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u);
}  // namespace reference

}  // namespace hvi
