#include <string>

#include "hvi/bem.hpp"

namespace hvi {

namespace {

void finish_panels(BoundaryCurve& c, int count) {
  const int n = c.num_nodes();
  c.panels.resize(count);
  for (int i = 0; i < count; ++i) {
    Panel& p = c.panels[i];
    p.a = i;
    p.b = (i + 1) % n;
    const Point2 e = c.nodes[p.b] - c.nodes[p.a];
    p.length = e.norm();
    if (!(p.length > 0.0)) throw BemError("zero-length panel " + std::to_string(i));
    p.tangent = e / p.length;
    p.normal = Point2{p.tangent.y(), -p.tangent.x()};
  }
}

}  // namespace

BoundaryCurve boundary_curve(const Mesh2D& mesh) {
  BoundaryCurve c;
  c.closed = true;
  c.nodes.reserve(mesh.boundary_edges.size());
  for (const auto& e : mesh.boundary_edges) c.nodes.push_back(mesh.vertices[e.a]);
  finish_panels(c, c.num_nodes());
  return c;
}

BoundaryCurve polyline_curve(std::span<const Point2> points, bool closed) {
  if (points.size() < 2) throw BemError("a polyline needs at least two points");
  BoundaryCurve c;
  c.closed = closed;
  c.nodes.assign(points.begin(), points.end());
  finish_panels(c, closed ? c.num_nodes() : c.num_nodes() - 1);
  return c;
}

Mat tangential_derivative(const BoundaryCurve& curve) {
  Mat D = Mat::Zero(curve.num_panels(), curve.num_nodes());
  for (int i = 0; i < curve.num_panels(); ++i) {
    const Panel& p = curve.panels[i];
    D(i, p.a) = -1.0 / p.length;
    D(i, p.b) = 1.0 / p.length;
  }
  return D;
}

Mat duality_mass(const BoundaryCurve& curve) {
  Mat M = Mat::Zero(curve.num_panels(), curve.num_nodes());
  for (int i = 0; i < curve.num_panels(); ++i) {
    const Panel& p = curve.panels[i];
    M(i, p.a) = 0.5 * p.length;
    M(i, p.b) = 0.5 * p.length;
  }
  return M;
}

}  // namespace hvi
