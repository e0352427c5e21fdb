#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hvi/bem.hpp"

namespace hvi::detail {

inline constexpr double inv_two_pi = 0.5 / std::numbers::pi;

inline bool collinear(const BoundaryCurve& c, int i, int j) {
  const Panel &p = c.panels[i], &q = c.panels[j];
  const auto cross = [](const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); };
  const double tol = 1e-13;
  return std::abs(cross(p.tangent, q.tangent)) < tol &&
         std::abs(cross(p.tangent, c.start(j) - c.start(i))) < tol * std::max(p.length, q.length);
}

inline double point_segment_distance(const Point2& x, const Point2& a, const Point2& b) {
  const Point2 e = b - a;
  const double t = std::clamp((x - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
  return (x - (a + t * e)).norm();
}

inline double panel_distance(const BoundaryCurve& c, int i, int j) {
  return std::min({point_segment_distance(c.start(i), c.start(j), c.end(j)),
                   point_segment_distance(c.end(i), c.start(j), c.end(j)),
                   point_segment_distance(c.start(j), c.start(i), c.end(i)),
                   point_segment_distance(c.end(j), c.start(i), c.end(i))});
}

struct OuterPoint {
  Point2 x;
  double w;  // includes the arc-length Jacobian
};

// Quadrature on panel i for integrands singular or nearly singular towards
// panel j: cubic grading into a shared vertex, composite Gauss for near
// panels, plain Gauss otherwise.
inline std::vector<OuterPoint> outer_rule(const BoundaryCurve& c, int i, int j, int order) {
  const auto [gx, gw] = gauss_legendre(order);
  const Panel& p = c.panels[i];
  const Panel& q = c.panels[j];
  const Point2 a = c.start(i);
  const double L = p.length;
  std::vector<OuterPoint> pts;
  const bool at_start = p.a == q.a || p.a == q.b;
  const bool at_end = p.b == q.a || p.b == q.b;
  if (at_start != at_end) {
    // Graded rule on the half touching the vertex, plain Gauss on the rest.
    pts.reserve(2 * gx.size());
    const double half = 0.5 * L;
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double s = half * gx[k] * gx[k] * gx[k];
      const double w = 3.0 * half * gx[k] * gx[k] * gw[k];
      pts.push_back({at_start ? Point2(a + s * p.tangent) : Point2(a + (L - s) * p.tangent), w});
    }
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double s = half * (1.0 + gx[k]);
      pts.push_back({at_start ? Point2(a + s * p.tangent) : Point2(a + (L - s) * p.tangent), half * gw[k]});
    }
    return pts;
  }
  const double d = panel_distance(c, i, j);
  const int nsub = std::clamp(static_cast<int>(std::ceil(2.0 * L / d)), 1, 16);
  const double h = L / nsub;
  pts.reserve(gx.size() * nsub);
  for (int s = 0; s < nsub; ++s)
    for (std::size_t k = 0; k < gx.size(); ++k) pts.push_back({a + (s + gx[k]) * h * p.tangent, h * gw[k]});
  return pts;
}

inline double v_entry(const BoundaryCurve& c, int i, int j, int order) {
  if (i == j || collinear(c, i, j)) {
    const Panel& p = c.panels[i];
    const Point2 a = c.start(i);
    double s0 = (c.start(j) - a).dot(p.tangent);
    double s1 = (c.end(j) - a).dot(p.tangent);
    if (s1 < s0) std::swap(s0, s1);
    return -inv_two_pi * panel::collinear_log_integral(0.0, p.length, s0, s1);
  }
  double sum = 0.0;
  for (const auto& op : outer_rule(c, i, j, order)) sum += op.w * panel::log_integral(op.x, c.start(j), c.end(j));
  return -inv_two_pi * sum;
}

// Adds the contribution of trial panel j to row i of K.
template <class Row>
inline void k_accumulate(const BoundaryCurve& c, int i, int j, int order, Row&& row) {
  if (i == j || collinear(c, i, j)) return;
  double wa = 0.0, wb = 0.0;
  for (const auto& op : outer_rule(c, i, j, order)) {
    const auto h = panel::dipole_hat_integrals(op.x, c.start(j), c.end(j));
    wa += op.w * h[0];
    wb += op.w * h[1];
  }
  row(c.panels[j].a) += inv_two_pi * wa;
  row(c.panels[j].b) += inv_two_pi * wb;
}

}  // namespace hvi::detail
