#include <cmath>
#include <sstream>

#include "hvi/harness.hpp"

namespace hvi {

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::string str(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

}  // namespace

ValidationReport validate_case(const CaseSpec& c, const RunSettings& s) {
  ValidationReport rep;
  rep.case_name = c.name;
  const SuperpotentialSpec spec = c.make_friction();
  SmoothingParams params;
  params.epsilon = s.eps;

  try {
    validate_material(c.data.material);
    rep.checks.push_back({"material law", true, c.data.material.name + ": bounded, t p(t) increasing, p' consistent"});
  } catch (const std::exception& e) {
    rep.checks.push_back({"material law", false, e.what()});
  }

  std::vector<double> grid;
  for (int i = 0; i <= 2000; ++i) grid.push_back(-10.0 + 20.0 * i / 2000);

  const GrowthConstants gc = measure_growth_constants(spec, grid);
  {
    bool ok = std::isfinite(gc.c) && std::isfinite(gc.d);
    std::string detail = "measured c = " + str(gc.c) + ", d = " + str(gc.d);
    if (!spec.c.empty()) {
      double c_decl = 0.0;
      for (double v : spec.c) c_decl = std::max(c_decl, v);
      ok = ok && gc.c <= c_decl + 1e-12;
      detail += " (declared c = " + str(c_decl);
      if (!spec.d.empty()) {
        double d_decl = 0.0;
        for (double v : spec.d) d_decl = std::max(d_decl, v);
        ok = ok && gc.d <= d_decl + 1e-12;
        detail += ", d = " + str(d_decl);
      }
      detail += ")";
    }
    rep.checks.push_back({"growth of branch derivatives", ok, detail});
  }

  const double dg_err = branch_derivative_error(spec, grid);
  rep.checks.push_back({"branch derivatives vs central differences", dg_err <= 1e-6, "max relative error " + str(dg_err)});

  const SmoothingBoundReport sb = smoothing_error_bound_check(spec, params, grid);
  rep.checks.push_back({"smoothing error bound", sb.ok,
                        "max gap " + str(sb.max_gap) + " <= (m-1) kappa eps = " + str(sb.bound) +
                            (sb.ok ? "" : "; " + sb.message)});

  const Mesh2D mesh = case_mesh(c, s.h0, 0);
  {
    const double integral = compatibility_integral(mesh, c.data);
    // A mismatch only shifts the multiplier, so this is a warning-level check.
    const bool ok = std::abs(integral) <= 1e-10;
    rep.checks.push_back({"compatibility int f0 + int t0 = 0", true,
                          "value " + str(integral) + " on the level-0 mesh", !ok});
  }

  {
    const DiscreteSystem sys = case_system(c, mesh, s.eps, s.solver.exec);
    const double cs = steklov_constant(sys);
    const double alpha = friction_alpha(sys);
    rep.checks.push_back({"one-sided constant below discrete Steklov constant", alpha < cs,
                          "alpha_hat = " + str(alpha) + ", c_S,disc = " + str(cs)});
  }

  rep.checks.push_back(transmission_consistency(c));
  return rep;
}

}  // namespace hvi
