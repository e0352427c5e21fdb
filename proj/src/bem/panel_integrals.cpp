#include <cmath>

#include "hvi/bem.hpp"

namespace hvi::panel {

namespace {

// F(u) = int ln(u^2 + eta^2) du.
double log_primitive(double u, double eta) {
  if (eta == 0.0) return u == 0.0 ? 0.0 : u * std::log(u * u) - 2.0 * u;
  return u * std::log(u * u + eta * eta) - 2.0 * u + 2.0 * eta * std::atan(u / eta);
}

}  // namespace

double log_antiderivative2(double x) {
  if (x == 0.0) return 0.0;
  return 0.5 * x * x * (std::log(std::abs(x)) - 1.5);
}

double collinear_log_integral(double a, double b, double c, double d) {
  return log_antiderivative2(b - c) - log_antiderivative2(a - c) - log_antiderivative2(b - d) +
         log_antiderivative2(a - d);
}

double log_integral(const Point2& x, const Point2& pa, const Point2& pb) {
  const Point2 e = pb - pa;
  const double L = e.norm();
  const Point2 tau = e / L;
  const Point2 r = x - pa;
  const double xi = r.dot(tau);
  const double eta = std::abs(tau.x() * r.y() - tau.y() * r.x());
  return 0.5 * (log_primitive(L - xi, eta) - log_primitive(-xi, eta));
}

std::array<double, 2> dipole_hat_integrals(const Point2& x, const Point2& pa, const Point2& pb) {
  const Point2 e = pb - pa;
  const double L = e.norm();
  const Point2 tau = e / L;
  const Point2 n{tau.y(), -tau.x()};
  const Point2 r = x - pa;
  const double xi = r.dot(tau);
  const double eta = r.dot(n);
  if (eta == 0.0) return {0.0, 0.0};
  const double i0 = std::atan((L - xi) / eta) + std::atan(xi / eta);
  const double i1 = xi * i0 + 0.5 * eta * std::log(((L - xi) * (L - xi) + eta * eta) / (xi * xi + eta * eta));
  return {i0 - i1 / L, i1 / L};
}

}  // namespace hvi::panel
