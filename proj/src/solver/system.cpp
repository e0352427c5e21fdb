#include <cmath>
#include <stdexcept>

#include "hvi/solver.hpp"

namespace hvi {

Vec DiscreteSystem::embed_s(const Vec& v) const {
  Vec w = Vec::Zero(n_b());
  for (int i = 0; i < n_v(); ++i) w[s_nodes[i]] = v[i];
  return w;
}

Vec DiscreteSystem::restrict_s(const Vec& w) const {
  Vec v(n_v());
  for (int i = 0; i < n_v(); ++i) v[i] = w[s_nodes[i]];
  return v;
}

Vec DiscreteSystem::boundary_state(const Vec& X) const {
  return trace.apply(X.head(n_u())) + embed_s(X.segment(n_u(), n_v()));
}

DiscreteSystem assemble_system(const Mesh2D& mesh, const MaterialLaw& material, const SuperpotentialSpec& spec,
                               const SmoothingParams& params, const ProblemData& data, const BemOptions& bem,
                               Execution exec) {
  validate_params(params);
  if (spec.branches.empty()) throw SolverError("friction law has no branches");
  if (boundary_diameter(mesh) >= 1.0)
    throw SolverError("mesh is not scaled: boundary diameter " + std::to_string(boundary_diameter(mesh)) +
                      " must be below 1");
  DiscreteSystem sys;
  sys.mesh = mesh;
  sys.dual = dual_partition(mesh);
  sys.trace = make_trace(mesh);
  for (const auto& c : sys.dual.cells) {
    sys.s_nodes.push_back(c.boundary_node);
    sys.cell_lengths.push_back(c.length);
    sys.arc.push_back(c.arc);
  }
  sys.material = material;
  sys.steklov = std::make_shared<const SteklovOperator>(build_steklov(mesh, bem, exec));
  sys.spec = spec;
  sys.params = params;

  const int nb = sys.n_b();
  const Mat& S = sys.steklov->S;
  sys.u0.resize(nb);
  for (int k = 0; k < nb; ++k) {
    const double val = data.u0(mesh.vertices[sys.trace.boundary_to_vertex[k]]);
    if (!std::isfinite(val)) throw SolverError("u0 is not finite at boundary node " + std::to_string(k));
    sys.u0[k] = val;
  }
  sys.load = assemble_load(mesh, data.f0);
  sys.b = assemble_boundary_load(mesh, data.t0) + S * sys.u0;
  sys.c_b = S * Vec::Ones(nb);
  sys.constraint_rhs = sys.c_b.dot(sys.u0);
  return sys;
}

DiscreteSystem with_friction(const DiscreteSystem& sys, const SuperpotentialSpec& spec, const SmoothingParams& params) {
  validate_params(params);
  DiscreteSystem out = sys;
  out.spec = spec;
  out.params = params;
  return out;
}

Vec friction_residual(const DiscreteSystem& sys, const Vec& v) {
  if (v.size() != sys.n_v()) throw std::invalid_argument("friction_residual: v has the wrong length");
  Vec r(sys.n_v());
  for (int i = 0; i < sys.n_v(); ++i)
    r[i] = superpotential_slope(sys.spec, sys.params, sys.arc[i], v[i]).slope * sys.cell_lengths[i];
  return r;
}

Vec friction_tangent(const DiscreteSystem& sys, const Vec& v) {
  if (v.size() != sys.n_v()) throw std::invalid_argument("friction_tangent: v has the wrong length");
  Vec d(sys.n_v());
  for (int i = 0; i < sys.n_v(); ++i)
    d[i] = superpotential_curvature(sys.spec, sys.params, sys.arc[i], v[i]) * sys.cell_lengths[i];
  return d;
}

namespace {

void check_state(const DiscreteSystem& sys, const Vec& X) {
  if (X.size() != sys.size())
    throw std::invalid_argument("state length " + std::to_string(X.size()) + " does not match system size " +
                                std::to_string(sys.size()));
}

}  // namespace

Vec residual(const DiscreteSystem& sys, const Vec& X, Execution exec) {
  check_state(sys, X);
  const int nu = sys.n_u(), nv = sys.n_v();
  const Vec u = X.head(nu), v = X.segment(nu, nv);
  const double mu = X[nu + nv];
  const Vec w = sys.boundary_state(X);
  // Boundary-node residual shared by the u and v blocks.
  const Vec rb = sys.steklov->S * w + mu * sys.c_b - sys.b;
  Vec F(sys.size());
  F.head(nu) = assemble_dg_residual(sys.mesh, sys.material, u, exec) + sys.trace.apply_transpose(rb) - sys.load;
  F.segment(nu, nv) = sys.restrict_s(rb) + friction_residual(sys, v);
  F[nu + nv] = sys.c_b.dot(w) - sys.constraint_rhs;
  return F;
}

Mat jacobian(const DiscreteSystem& sys, const Vec& X, Execution exec) {
  check_state(sys, X);
  const int nu = sys.n_u(), nv = sys.n_v(), n = sys.size();
  const Mat& S = sys.steklov->S;
  const auto& bv = sys.trace.boundary_to_vertex;
  const int nb = sys.n_b();
  Mat J = Mat::Zero(n, n);
  const SparseMat T = assemble_dg_tangent(sys.mesh, sys.material, X.head(nu), exec);
  for (int k = 0; k < T.outerSize(); ++k)
    for (SparseMat::InnerIterator it(T, k); it; ++it) J(it.row(), it.col()) += it.value();
  // Boundary index -> global column of the u dof and, on Gamma_s, the v dof.
  std::vector<int> s_of_b(nb, -1);
  for (int i = 0; i < nv; ++i) s_of_b[sys.s_nodes[i]] = nu + i;
  for (int a = 0; a < nb; ++a) {
    for (int c = 0; c < nb; ++c) {
      const double s = S(a, c);
      J(bv[a], bv[c]) += s;
      if (s_of_b[c] >= 0) J(bv[a], s_of_b[c]) += s;
      if (s_of_b[a] >= 0) {
        J(s_of_b[a], bv[c]) += s;
        if (s_of_b[c] >= 0) J(s_of_b[a], s_of_b[c]) += s;
      }
    }
    J(bv[a], n - 1) += sys.c_b[a];
    J(n - 1, bv[a]) += sys.c_b[a];
    if (s_of_b[a] >= 0) {
      J(s_of_b[a], n - 1) += sys.c_b[a];
      J(n - 1, s_of_b[a]) += sys.c_b[a];
    }
  }
  const Vec d = friction_tangent(sys, X.segment(nu, nv));
  for (int i = 0; i < nv; ++i) J(nu + i, nu + i) += d[i];
  return J;
}

double energy(const DiscreteSystem& sys, const Vec& X) {
  check_state(sys, X);
  const int nu = sys.n_u(), nv = sys.n_v();
  const Vec u = X.head(nu), v = X.segment(nu, nv);
  const Vec w = sys.boundary_state(X);
  double J = 0.0;
  for (int i = 0; i < nv; ++i)
    J += superpotential_value(sys.spec, sys.params, sys.arc[i], v[i]) * sys.cell_lengths[i];
  return assemble_dg_energy(sys.mesh, sys.material, u) + 0.5 * w.dot(sys.steklov->S * w) + J - sys.load.dot(u) -
         sys.b.dot(w);
}

double constraint_value(const DiscreteSystem& sys, const Vec& X) {
  check_state(sys, X);
  return sys.c_b.dot(sys.boundary_state(X)) - sys.constraint_rhs;
}

}  // namespace hvi
