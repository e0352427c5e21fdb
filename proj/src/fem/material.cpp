#include <cmath>
#include <stdexcept>

#include "hvi/fem.hpp"

namespace hvi {

MaterialLaw linear_material() {
  return {"linear", [](double) { return 1.0; }, [](double) { return 0.0; }, 1.0};
}

MaterialLaw rational_material() {
  return {"rational", [](double t) { return 2.0 + 1.0 / (1.0 + t); },
          [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); }, 3.0};
}

MaterialLaw material_by_name(const std::string& name) {
  if (name == "linear") return linear_material();
  if (name == "rational") return rational_material();
  throw std::invalid_argument("unknown material \"" + name + "\" (catalog: linear, rational)");
}

namespace {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double energy_density(const MaterialLaw& material, double t) {
  if (t <= 0.0) return 0.0;
  auto f = [&](double s) { return s * material.p(s); };
  const double fa = f(0.0), fm = f(0.5 * t), fb = f(t);
  const double whole = t / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, 0.0, t, fa, fm, fb, whole, 1e-12, 50);
}

void validate_material(const MaterialLaw& material, double t_max, int samples) {
  if (!material.p || !material.dp) throw std::invalid_argument("material law needs p and dp");
  double prev_flux = -1.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_max * i / samples;
    const double p = material.p(t);
    if (!(p >= 0.0 && p <= material.p0))
      throw std::invalid_argument("material " + material.name + ": p(t) outside [0, p0] at t=" + std::to_string(t));
    const double flux = t * p;
    if (i > 0 && !(flux > prev_flux))
      throw std::invalid_argument("material " + material.name + ": t p(t) not strictly increasing at t=" + std::to_string(t));
    prev_flux = flux;
    if (t > 1e-3) {
      const double tau = 1e-5 * std::max(1.0, t);
      const double fd = (material.p(t + tau) - material.p(t - tau)) / (2.0 * tau);
      if (std::abs(fd - material.dp(t)) > 1e-6 * std::max(1.0, std::abs(material.dp(t))))
        throw std::invalid_argument("material " + material.name + ": dp does not match p at t=" + std::to_string(t));
    }
  }
}

}  // namespace hvi
