#include <cmath>

#include "hvi/harness.hpp"

namespace hvi {

std::optional<double> observed_order(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 3) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

namespace {

// Edge-midpoint rule on each triangle, exact for quadratic integrands.
double h1_error(const Mesh2D& mesh, const Vec& u, const std::function<Point2(const Point2&)>& grad) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
    const double area = triangle_area(mesh, t);
    const double s = 1.0 / (2.0 * area);
    const Point2 gh = u[tri[0]] * Point2{(b.y() - c.y()) * s, (c.x() - b.x()) * s} +
                      u[tri[1]] * Point2{(c.y() - a.y()) * s, (a.x() - c.x()) * s} +
                      u[tri[2]] * Point2{(a.y() - b.y()) * s, (b.x() - a.x()) * s};
    for (const Point2& m : {Point2(0.5 * (a + b)), Point2(0.5 * (b + c)), Point2(0.5 * (c + a))})
      sum += area / 3.0 * (gh - grad(m)).squaredNorm();
  }
  return std::sqrt(sum);
}

double l2_error(const Mesh2D& mesh, const Vec& u, const std::function<double(const Point2&)>& f) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = triangle_area(mesh, t);
    for (int e = 0; e < 3; ++e) {
      const int i = tri[e], j = tri[(e + 1) % 3];
      const Point2 m = 0.5 * (mesh.vertices[i] + mesh.vertices[j]);
      const double d = 0.5 * (u[i] + u[j]) - f(m);
      sum += area / 3.0 * d * d;
    }
  }
  return std::sqrt(sum);
}

// L2(Gamma_s) error of the P1 slip against the exact slip, 4-point Gauss per edge.
double boundary_error(const DiscreteSystem& sys, const Vec& v, const std::function<double(const Point2&)>& slip) {
  const auto [gx, gw] = gauss_legendre(4);
  const Mesh2D& m = sys.mesh;
  std::vector<int> dof_of_b(sys.n_b(), -1);
  for (int i = 0; i < sys.n_v(); ++i) dof_of_b[sys.s_nodes[i]] = i;
  double sum = 0.0;
  for (int k = 0; k < sys.n_b(); ++k) {
    const auto& e = m.boundary_edges[k];
    if (e.label != Label::S) continue;
    const int kb = (k + 1) % sys.n_b();
    const double va = v[dof_of_b[k]], vb = v[dof_of_b[kb]];
    const Point2 &pa = m.vertices[e.a], &pb = m.vertices[e.b];
    const double L = (pb - pa).norm();
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double d = (1.0 - gx[q]) * va + gx[q] * vb - slip(pa + gx[q] * (pb - pa));
      sum += gw[q] * L * d * d;
    }
  }
  return std::sqrt(sum);
}

// Prolongates the (u, v) part of a coarse state to the next refinement.
Vec prolongate_state(const DiscreteSystem& coarse, const DiscreteSystem& fine, const Vec& X) {
  const Vec u = prolongate(fine.mesh, X.head(coarse.n_u()));
  Vec vc = Vec::Zero(coarse.n_u());
  for (int i = 0; i < coarse.n_v(); ++i) vc[coarse.trace.boundary_to_vertex[coarse.s_nodes[i]]] = X[coarse.n_u() + i];
  const Vec vf = prolongate(fine.mesh, vc);
  Vec Y = Vec::Zero(fine.size());
  Y.head(fine.n_u()) = u;
  for (int i = 0; i < fine.n_v(); ++i) Y[fine.n_u() + i] = vf[fine.trace.boundary_to_vertex[fine.s_nodes[i]]];
  Y[fine.size() - 1] = X[coarse.size() - 1];
  return Y;
}

StudyRow solve_row(const DiscreteSystem& sys, const RunSettings& s, const std::optional<Vec>& warm) {
  StudyRow row;
  row.level = sys.mesh.level;
  row.h = sys.mesh.h;
  row.eps = sys.params.epsilon;
  row.dofs = sys.size();
  row.solution = solve_newton(sys, s.solver, s.warm_start ? warm : std::nullopt);
  row.newton_iters = row.solution.iterations;
  row.converged = row.solution.converged;
  row.residual = row.solution.residual_history.back();
  row.energy = row.solution.energy;
  row.alpha_hat = row.solution.alpha_hat;
  row.c_s_disc = row.solution.c_s_disc;
  row.unique = row.solution.unique;
  return row;
}

}  // namespace

StudyReport run_h_study(const CaseSpec& c, const RunSettings& s) {
  if (s.levels < 3) throw ConfigError("mesh.levels: levels >= 3 required for an h study, got " + std::to_string(s.levels));
  StudyReport rep;
  rep.kind = "h";
  rep.case_name = c.name;
  rep.kappa = density_kappa("zang");
  rep.probes = c.probes;
  Mesh2D mesh = case_mesh(c, s.h0, 0);
  std::optional<DiscreteSystem> prev_sys;
  std::optional<Vec> prev_state;
  for (int level = 0; level < s.levels; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    DiscreteSystem sys = case_system(c, mesh, s.eps, s.solver.exec);
    std::optional<Vec> warm;
    if (prev_sys) warm = prolongate_state(*prev_sys, sys, *prev_state);
    StudyRow row = solve_row(sys, s, warm);
    const Vec X = row.solution.state();
    if (c.exact) {
      const auto& ex = *c.exact;
      row.error_h1_interior = h1_error(mesh, row.solution.u, ex.grad_u1);
      row.error_l2_interior = l2_error(mesh, row.solution.u, ex.u1);
      const auto slip = [&](const Point2& x) { return c.data.u0(x) + ex.u2(x) - ex.u1(x); };
      row.error_l2_boundary = boundary_error(sys, row.solution.v, slip);
      // Exterior field from the Cauchy data of u2 = u|G + v - u0.
      const Vec g = sys.boundary_state(X) - sys.u0;
      const Vec psi = sys.steklov->neumann_datum(g);
      const Vec ext = reconstruct_exterior(sys.steklov->ops.curve, g, psi, c.probes);
      for (std::size_t k = 0; k < c.probes.size(); ++k) row.exterior_errors.push_back(std::abs(ext[k] - ex.u2(c.probes[k])));
    }
    if (prev_sys) row.diff_e_norm = e_norm(sys, X - prolongate_state(*prev_sys, sys, *prev_state));
    rep.rows.push_back(std::move(row));
    prev_sys = std::move(sys);
    prev_state = X;
  }

  std::vector<double> h, e_h1, e_l2, e_b, diff, hd;
  for (const auto& r : rep.rows) {
    h.push_back(r.h);
    if (r.error_h1_interior) e_h1.push_back(*r.error_h1_interior);
    if (r.error_l2_interior) e_l2.push_back(*r.error_l2_interior);
    if (r.error_l2_boundary) e_b.push_back(*r.error_l2_boundary);
    if (r.diff_e_norm) {
      hd.push_back(r.h);
      diff.push_back(*r.diff_e_norm);
    }
  }
  if (auto o = observed_order(h, e_h1)) rep.observed_orders["error_h1_interior"] = *o;
  if (auto o = observed_order(h, e_l2)) rep.observed_orders["error_l2_interior"] = *o;
  if (auto o = observed_order(h, e_b)) rep.observed_orders["error_l2_boundary"] = *o;
  if (auto o = observed_order(hd, diff)) rep.observed_orders["diff_e_norm"] = *o;
  if (c.exact) {
    rep.oracles["error_h1_interior"] = "exact interior field u1, edge-midpoint quadrature";
    rep.oracles["error_l2_interior"] = "exact interior field u1, edge-midpoint quadrature";
    rep.oracles["error_l2_boundary"] = "exact slip u0 + u2 - u1 on Gamma_s, 4-point Gauss";
    rep.oracles["ext_err"] = "exact exterior field u2 at probe points";
  }
  rep.oracles["diff_e_norm"] = "level-to-level difference against the prolongated coarse solution";
  bool all_converged = true, diffs_decreasing = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    all_converged = all_converged && rep.rows[i].converged;
    if (i >= 2 && !(*rep.rows[i].diff_e_norm < *rep.rows[i - 1].diff_e_norm)) diffs_decreasing = false;
  }
  rep.flags["all_converged"] = all_converged;
  rep.flags["diff_decreasing"] = diffs_decreasing;
  return rep;
}

StudyReport run_eps_study(const CaseSpec& c, const RunSettings& s) {
  const auto& sched = s.eps_schedule;
  if (sched.size() < 3) throw ConfigError("smoothing.eps_schedule: at least 3 values required");
  for (std::size_t i = 1; i < sched.size(); ++i)
    if (!(sched[i] < sched[i - 1])) throw ConfigError("smoothing.eps_schedule: values must be strictly decreasing");
  StudyReport rep;
  rep.kind = "eps";
  rep.case_name = c.name;
  rep.kappa = density_kappa("zang");
  const Mesh2D mesh = case_mesh(c, s.h0, s.levels - 1);
  const DiscreteSystem base = case_system(c, mesh, sched.front(), s.solver.exec);
  std::optional<Vec> prev;
  for (double eps : sched) {
    SmoothingParams params;
    params.epsilon = eps;
    const DiscreteSystem sys = with_friction(base, base.spec, params);
    StudyRow row = solve_row(sys, s, prev);
    const Vec X = row.solution.state();
    if (prev) row.diff_e_norm = e_norm(sys, X - *prev);
    rep.rows.push_back(std::move(row));
    prev = X;
  }
  rep.oracles["diff_e_norm"] = "difference of successive regularized solutions on a fixed mesh";
  std::vector<double> eps, diff;
  bool strictly = true, all_converged = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    all_converged = all_converged && rep.rows[i].converged;
    if (rep.rows[i].diff_e_norm) {
      eps.push_back(rep.rows[i].eps);
      diff.push_back(*rep.rows[i].diff_e_norm);
    }
    if (i >= 2 && !(*rep.rows[i].diff_e_norm < *rep.rows[i - 1].diff_e_norm)) strictly = false;
  }
  if (auto o = observed_order(eps, diff)) rep.observed_orders["diff_e_norm_vs_eps"] = *o;
  rep.flags["all_converged"] = all_converged;
  rep.flags["diff_strictly_decreasing"] = strictly;
  rep.flags["cauchy_like"] = diff.empty() || diff.back() <= diff.front();
  bool unique = true;
  for (const auto& r : rep.rows) unique = unique && r.unique;
  rep.flags["unique_all_eps"] = unique;
  return rep;
}

}  // namespace hvi
