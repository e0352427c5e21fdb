#include "element.hpp"
#include "hvi/fem.hpp"

namespace hvi::reference {

Vec assemble_dg_residual(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u) {
  detail::check_size(mesh, u);
  Vec r = Vec::Zero(mesh.num_vertices());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto loc = detail::residual_local(detail::p1_element(mesh, t), material, u);
    for (int a = 0; a < 3; ++a) r[mesh.triangles[t][a]] += loc[a];
  }
  return r;
}

SparseMat assemble_dg_tangent(const Mesh2D& mesh, const MaterialLaw& material, const Vec& u) {
  detail::check_size(mesh, u);
  std::vector<Eigen::Triplet<double>> trip;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto k = detail::tangent_local(detail::p1_element(mesh, t), material, u);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) trip.emplace_back(mesh.triangles[t][a], mesh.triangles[t][b], k[a][b]);
  }
  SparseMat T(mesh.num_vertices(), mesh.num_vertices());
  T.setFromTriplets(trip.begin(), trip.end());
  return T;
}

}  // namespace hvi::reference
