#include <sstream>

#include "hvi/bem.hpp"
#include "pair_rules.hpp"

namespace hvi {

Vec reconstruct_exterior(const BoundaryCurve& curve, const Vec& g, const Vec& psi, std::span<const Point2> points,
                         double a) {
  if (g.size() != curve.num_nodes() || psi.size() != curve.num_panels())
    throw std::invalid_argument("Cauchy data sizes do not match the boundary curve");
  Vec u(static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point2& x = points[k];
    double dl = 0.0, sl = 0.0;
    for (int i = 0; i < curve.num_panels(); ++i) {
      const Panel& p = curve.panels[i];
      const double d = detail::point_segment_distance(x, curve.start(i), curve.end(i));
      if (d <= p.length) {
        std::ostringstream msg;
        msg << "evaluation point (" << x.x() << ", " << x.y() << ") is at distance " << d << " from panel " << i
            << ", not more than its length " << p.length;
        throw BemError(msg.str());
      }
      const auto h = panel::dipole_hat_integrals(x, curve.start(i), curve.end(i));
      dl += h[0] * g[p.a] + h[1] * g[p.b];
      sl += psi[i] * panel::log_integral(x, curve.start(i), curve.end(i));
    }
    u[static_cast<Eigen::Index>(k)] = detail::inv_two_pi * (dl + sl) + a;
  }
  return u;
}

}  // namespace hvi
