#pragma once

#include <array>
#include <cmath>

#include "hvi/fem.hpp"

namespace hvi::detail {

struct P1Element {
  std::array<int, 3> nodes;
  std::array<Point2, 3> grad;  // gradients of the three hat functions
  double area;
};

inline P1Element p1_element(const Mesh2D& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Point2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
  const double area = triangle_area(mesh, t);
  const double s = 1.0 / (2.0 * area);
  return {tri,
          {Point2{(b.y() - c.y()) * s, (c.x() - b.x()) * s}, Point2{(c.y() - a.y()) * s, (a.x() - c.x()) * s},
           Point2{(a.y() - b.y()) * s, (b.x() - a.x()) * s}},
          area};
}

inline Point2 element_gradient(const P1Element& e, const Vec& u) {
  return u[e.nodes[0]] * e.grad[0] + u[e.nodes[1]] * e.grad[1] + u[e.nodes[2]] * e.grad[2];
}

inline std::array<double, 3> residual_local(const P1Element& e, const MaterialLaw& m, const Vec& u) {
  const Point2 g = element_gradient(e, u);
  const double coef = e.area * m.p(g.norm());
  return {coef * g.dot(e.grad[0]), coef * g.dot(e.grad[1]), coef * g.dot(e.grad[2])};
}

// Local tangent: |T| grad_a^T [p I + (p'/t) g g^T] grad_b, with the t -> 0
// limit p(0) I.
inline std::array<std::array<double, 3>, 3> tangent_local(const P1Element& e, const MaterialLaw& m, const Vec& u) {
  const Point2 g = element_gradient(e, u);
  const double t = g.norm();
  const double p = m.p(t);
  const double q = t < 1e-12 ? 0.0 : m.dp(t) / t;
  std::array<std::array<double, 3>, 3> k{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      k[a][b] = e.area * (p * e.grad[a].dot(e.grad[b]) + q * g.dot(e.grad[a]) * g.dot(e.grad[b]));
    }
  }
  return k;
}

inline void check_size(const Mesh2D& mesh, const Vec& u) {
  if (u.size() != mesh.num_vertices())
    throw std::invalid_argument("coefficient vector length " + std::to_string(u.size()) +
                                " does not match the number of mesh vertices " +
                                std::to_string(mesh.num_vertices()));
}

}  // namespace hvi::detail
