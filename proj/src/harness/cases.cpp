#include <cmath>
#include <sstream>

#include "hvi/harness.hpp"

namespace hvi {

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {"dipole-linear", "tresca-square", "nonconvex-square"};
  return names;
}

namespace {

std::vector<Point2> scaled_square(double scale) {
  const double a = 0.5 * scale;
  return {{-a, -a}, {a, -a}, {a, a}, {-a, a}};
}

// Sides in polygon order: bottom, right, top, left.
CaseSpec dipole_linear(double scale) {
  CaseSpec c;
  c.name = "dipole-linear";
  c.polygon = scaled_square(scale);
  c.labels = {Label::T, Label::S, Label::T, Label::T};
  c.material = "linear";
  const Point2 z = scale * Point2{0.075, 0.05};
  ExactSolution ex;
  ex.u1 = [](const Point2& x) { return x.x(); };
  ex.grad_u1 = [](const Point2&) { return Point2{1.0, 0.0}; };
  ex.u2 = [z](const Point2& x) {
    const Point2 d = x - z;
    return d.x() / d.squaredNorm();
  };
  ex.grad_u2 = [z](const Point2& x) {
    const Point2 d = x - z;
    const double r4 = d.squaredNorm() * d.squaredNorm();
    return Point2{(d.y() * d.y() - d.x() * d.x()) / r4, -2.0 * d.x() * d.y() / r4};
  };
  c.data.f0 = [](const Point2&) { return 0.0; };
  c.data.t0 = [ex](const Point2& x, const Point2& n) { return ex.grad_u1(x).dot(n) - ex.grad_u2(x).dot(n); };
  c.data.u0 = [ex](const Point2& x) { return ex.u1(x) - ex.u2(x); };
  // Gamma_s is the right side, where dn u1 = 1, so the friction law
  // linear(q) with q = dn u1 holds as an equality with zero slip.
  c.friction = "linear";
  c.friction_params = {1.0};
  c.exact = ex;
  c.probes = {scale * Point2{1.25, 0.0}, scale * Point2{0.0, 1.25}, scale * Point2{-1.125, 0.75},
              scale * Point2{0.875, -1.0}, scale * Point2{1.5, 1.5}};
  return c;
}

CaseSpec friction_square(const std::string& name, double scale) {
  CaseSpec c;
  c.name = name;
  c.polygon = scaled_square(scale);
  c.labels = {Label::S, Label::T, Label::T, Label::T};
  c.material = "rational";
  // f0 = 1 on |Omega| = scale^2, balanced by a uniform traction on |Gamma| = 4 scale.
  const double t0 = -0.25 * scale;
  c.data.f0 = [](const Point2&) { return 1.0; };
  c.data.t0 = [t0](const Point2&, const Point2&) { return t0; };
  c.data.u0 = [](const Point2&) { return 0.0; };
  if (name == "tresca-square") {
    c.friction = "tresca";
    c.friction_params = {1.0};
  } else {
    c.friction = "nonconvex";
    c.friction_params = {1.0, 2.0};
  }
  return c;
}

void bind_friction(CaseSpec& c) {
  const std::string name = c.friction;
  const std::vector<double> params = c.friction_params;
  superpotential_by_name(name, params);  // fail early on bad parameters
  c.make_friction = [name, params]() { return superpotential_by_name(name, params); };
  c.data.material = material_by_name(c.material);
}

}  // namespace

CaseSpec manufactured_case(const std::string& name, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("case scale must be positive");
  CaseSpec c;
  if (name == "dipole-linear") {
    c = dipole_linear(scale);
  } else if (name == "tresca-square" || name == "nonconvex-square") {
    c = friction_square(name, scale);
  } else {
    std::string list;
    for (const auto& n : case_names()) list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown case '" + name + "' (catalog: " + list + ")");
  }
  bind_friction(c);
  return c;
}

CaseSpec configured_case(const RunSettings& s) {
  CaseSpec c = manufactured_case(s.case_name, s.scale);
  if (s.material_name) c.material = *s.material_name;
  if (s.friction_name) {
    c.friction = *s.friction_name;
    c.friction_params = s.friction_params;
  }
  bind_friction(c);
  return c;
}

CheckResult transmission_consistency(const CaseSpec& c, int samples) {
  CheckResult r{"transmission consistency", true, ""};
  if (!c.exact) {
    r.detail = "no exact solution; skipped";
    return r;
  }
  const auto& ex = *c.exact;
  const SuperpotentialSpec spec = c.make_friction();
  const int ns = static_cast<int>(c.polygon.size());
  std::vector<double> side_len(ns);
  double perimeter = 0.0;
  for (int k = 0; k < ns; ++k) perimeter += side_len[k] = (c.polygon[(k + 1) % ns] - c.polygon[k]).norm();
  double worst_jump = 0.0, worst_flux = 0.0, worst_friction = 0.0;
  double s_arc = 0.0;  // arc position along Gamma_s, side by side
  std::vector<double> s_start(ns, 0.0);
  for (int k = 0; k < ns; ++k) {
    s_start[k] = s_arc;
    if (c.labels[k] == Label::S) s_arc += side_len[k];
  }
  for (int i = 0; i < samples; ++i) {
    double t = (i + 0.5) / samples * perimeter;
    int k = 0;
    while (t > side_len[k]) t -= side_len[k++];
    const Point2 a = c.polygon[k], b = c.polygon[(k + 1) % ns];
    const Point2 tau = (b - a) / side_len[k];
    const Point2 n{tau.y(), -tau.x()};
    const Point2 x = a + t * tau;
    const Point2 g1 = ex.grad_u1(x);
    const double flux1 = c.data.material.p(g1.norm()) * g1.dot(n);
    worst_jump = std::max(worst_jump, std::abs(ex.u1(x) - ex.u2(x) - c.data.u0(x)));
    worst_flux = std::max(worst_flux, std::abs(flux1 - ex.grad_u2(x).dot(n) - c.data.t0(x, n)));
    if (c.labels[k] == Label::S) {
      const double slip = c.data.u0(x) + ex.u2(x) - ex.u1(x);
      const auto [lo, hi] = clarke_gradient(spec, s_start[k] + t, slip);
      worst_friction = std::max(worst_friction, std::max(lo - flux1, flux1 - hi));
    }
  }
  const double worst = std::max({worst_jump, worst_flux, worst_friction});
  r.pass = worst <= 1e-10;
  std::ostringstream msg;
  msg << "max |u1-u2-u0| = " << worst_jump << ", max flux mismatch = " << worst_flux
      << ", max distance of flux to dj = " << worst_friction << " over " << samples << " samples";
  r.detail = msg.str();
  return r;
}

Mesh2D case_mesh(const CaseSpec& c, double h0, int level) {
  Mesh2D m = build_polygon_mesh(c.polygon, h0, c.labels);
  for (int i = 0; i < level; ++i) m = refine_uniform(m);
  return m;
}

DiscreteSystem case_system(const CaseSpec& c, const Mesh2D& mesh, double eps, Execution exec) {
  SmoothingParams params;
  params.epsilon = eps;
  return assemble_system(mesh, c.data.material, c.make_friction(), params, c.data, {}, exec);
}

}  // namespace hvi
