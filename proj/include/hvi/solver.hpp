#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hvi/bem.hpp"
#include "hvi/fem.hpp"
#include "hvi/mesh.hpp"
#include "hvi/smoothing.hpp"

namespace hvi {

struct SolverConfig {
  double tol = 1e-10;  // on ||F|| / max(1, ||F(X0)||)
  int max_iter = 50;
  bool damping = true;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double min_step = 1e-10;
  Execution exec = Execution::parallel;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete regularized problem. Unknowns X = (u, v, mu): u on all mesh
/// vertices, v on the Gamma_s boundary nodes, mu the multiplier of the
/// constraint <S_h 1, u|G + v - u0> = 0.
struct DiscreteSystem {
  Mesh2D mesh;
  DualPartition dual;
  TraceMap trace;
  std::vector<int> s_nodes;  // boundary node index of each Gamma_s dof
  MaterialLaw material;
  std::shared_ptr<const SteklovOperator> steklov;
  SuperpotentialSpec spec;
  SmoothingParams params;

  Vec load;     // l: int f0 phi over Omega, per vertex
  Vec b;        // t0 + S_h u0, per boundary node
  Vec u0;       // jump datum, per boundary node
  Vec c_b;      // S_h 1
  double constraint_rhs = 0.0;  // c_b . u0
  std::vector<double> cell_lengths;
  std::vector<double> arc;

  int n_u() const { return mesh.num_vertices(); }
  int n_v() const { return static_cast<int>(s_nodes.size()); }
  int n_b() const { return trace.num_boundary(); }
  int size() const { return n_u() + n_v() + 1; }

  /// gamma u + E v.
  Vec boundary_state(const Vec& X) const;
  Vec embed_s(const Vec& v) const;
  Vec restrict_s(const Vec& w) const;
};

DiscreteSystem assemble_system(const Mesh2D& mesh, const MaterialLaw& material, const SuperpotentialSpec& spec,
                               const SmoothingParams& params, const ProblemData& data, const BemOptions& bem = {},
                               Execution exec = Execution::parallel);
/// Same assembled blocks with another friction law or smoothing parameter.
DiscreteSystem with_friction(const DiscreteSystem& sys, const SuperpotentialSpec& spec, const SmoothingParams& params);

/// Node i: jhat_x(s_i, eps, v_i) |K_i|.
Vec friction_residual(const DiscreteSystem& sys, const Vec& v);
/// Diagonal: jhat_xx(s_i, eps, v_i) |K_i|.
Vec friction_tangent(const DiscreteSystem& sys, const Vec& v);

Vec residual(const DiscreteSystem& sys, const Vec& X, Execution exec = Execution::parallel);
Mat jacobian(const DiscreteSystem& sys, const Vec& X, Execution exec = Execution::parallel);
/// Discrete potential energy of (u, v); the multiplier entry is ignored.
double energy(const DiscreteSystem& sys, const Vec& X);

struct Solution {
  Vec u;
  Vec v;
  double multiplier = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  // relative norms, one per iterate
  std::vector<double> energy_history;
  double energy = 0.0;
  bool converged = false;
  bool energy_decreasing = true;
  double alpha_hat = 0.0;
  double c_s_disc = 0.0;
  bool unique = false;  // alpha_hat < c_s_disc
  std::string message;

  Vec state() const;
};

/// Damped Newton on F(X) = 0 with a bordered dense KKT solve.
Solution solve_newton(const DiscreteSystem& sys, const SolverConfig& config = {},
                      const std::optional<Vec>& warm_start = std::nullopt);

/// Constraint value c_b . (gamma u + E v - u0).
double constraint_value(const DiscreteSystem& sys, const Vec& X);

/// min over v of <S_h E v, E v> / sum_i |K_i| v_i^2.
double steklov_constant(const DiscreteSystem& sys);
/// One-sided Lipschitz estimate of the friction slope over [lo, hi].
double friction_alpha(const DiscreteSystem& sys, double lo = -4.0, double hi = 4.0, int samples = 801);

/// |du|_H1^2 + ||du||_L2^2 + ||dv||_L2(Gs)^2 + <S_h E dv, E dv>.
double e_norm(const DiscreteSystem& sys, const Vec& du, const Vec& dv);
/// Same norm of the (u, v) part of a state difference.
double e_norm(const DiscreteSystem& sys, const Vec& dX);

struct MonotonicityReport {
  double min_ratio_e = 0.0;  // min <F(X1)-F(X2), X1-X2> / ||X1-X2||_E^2
  double min_ratio_v = 0.0;  // same, divided by the lumped L2(Gamma_s) norm of dv
  int pairs = 0;
};

/// Random pairs of smooth states (low-degree polynomial u, low sine modes
/// for v) with amplitude `scale`.
MonotonicityReport measure_monotonicity(const DiscreteSystem& sys, int pairs, unsigned seed, double scale = 2.0);

}  // namespace hvi
