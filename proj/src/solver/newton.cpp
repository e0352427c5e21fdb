#include <lapacke.h>

#include <cmath>
#include <vector>

#include "hvi/solver.hpp"

namespace hvi {

Vec Solution::state() const {
  Vec X(u.size() + v.size() + 1);
  X << u, v, multiplier;
  return X;
}

namespace {

// Solves J x = rhs for symmetric indefinite J (Bunch-Kaufman).
Vec solve_symmetric(Mat J, Vec rhs) {
  const lapack_int n = static_cast<lapack_int>(J.rows());
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_dsysv(LAPACK_COL_MAJOR, 'L', n, 1, J.data(), n, ipiv.data(), rhs.data(), n);
  if (info > 0) throw SolverError("KKT matrix is singular (dsysv pivot " + std::to_string(info) + ")");
  if (info < 0) throw SolverError("dsysv rejected argument " + std::to_string(-info));
  return rhs;
}

}  // namespace

Solution solve_newton(const DiscreteSystem& sys, const SolverConfig& config, const std::optional<Vec>& warm_start) {
  const int nu = sys.n_u(), nv = sys.n_v();
  Vec X = Vec::Zero(sys.size());
  if (warm_start) {
    if (warm_start->size() != sys.size()) throw SolverError("warm start has the wrong length");
    X = *warm_start;
  }
  Solution sol;
  Vec F = residual(sys, X, config.exec);
  const double scale = std::max(1.0, F.norm());
  double fnorm = F.norm();
  sol.residual_history.push_back(fnorm / scale);
  sol.energy_history.push_back(energy(sys, X));

  for (int it = 0; it < config.max_iter && fnorm / scale > config.tol; ++it) {
    const Vec dX = solve_symmetric(jacobian(sys, X, config.exec), -F);
    double step = 1.0;
    Vec Xn = X + dX;
    Vec Fn = residual(sys, Xn, config.exec);
    if (config.damping) {
      while (Fn.squaredNorm() > (1.0 - 2.0 * config.armijo_c * step) * fnorm * fnorm) {
        step *= config.backtrack;
        if (step < config.min_step) break;
        Xn = X + step * dX;
        Fn = residual(sys, Xn, config.exec);
      }
      if (step < config.min_step) {
        sol.message = "line search failed at iteration " + std::to_string(it + 1);
        break;
      }
    }
    X = Xn;
    F = Fn;
    fnorm = F.norm();
    ++sol.iterations;
    sol.residual_history.push_back(fnorm / scale);
    sol.energy_history.push_back(energy(sys, X));
  }

  sol.u = X.head(nu);
  sol.v = X.segment(nu, nv);
  sol.multiplier = X[nu + nv];
  sol.energy = sol.energy_history.back();
  sol.converged = fnorm / scale <= config.tol;
  if (!sol.converged && sol.message.empty())
    sol.message = "no convergence in " + std::to_string(config.max_iter) + " iterations";
  // The first step moves onto the constraint set, where the energy is
  // comparable; monitor descent from there on.
  for (std::size_t k = 2; k < sol.energy_history.size(); ++k) {
    const double prev = sol.energy_history[k - 1];
    if (sol.energy_history[k] > prev + 1e-12 * std::max(1.0, std::abs(prev))) sol.energy_decreasing = false;
  }
  sol.c_s_disc = steklov_constant(sys);
  double lo = -4.0, hi = 4.0;
  if (nv > 0) {
    lo = std::min(lo, sol.v.minCoeff() - 1.0);
    hi = std::max(hi, sol.v.maxCoeff() + 1.0);
  }
  sol.alpha_hat = friction_alpha(sys, lo, hi);
  sol.unique = sol.alpha_hat < sol.c_s_disc;
  return sol;
}

}  // namespace hvi
