#include "hvi/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hvi {

double density_kappa(const std::string& density) {
  if (density == "zang") return 0.25;
  throw std::invalid_argument("unknown smoothing density '" + density + "' (available: zang)");
}

void validate_params(const SmoothingParams& params) {
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("smoothing epsilon must be positive");
  if (params.kappa != density_kappa(params.density))
    throw std::invalid_argument("kappa does not match the first absolute moment of the density");
}

PlusValue plus_smooth(double eps, double x) {
  if (!(eps > 0.0)) throw std::invalid_argument("plus_smooth: eps must be positive");
  const double h = 0.5 * eps;
  if (x < -h) return {0.0, 0.0};
  if (x > h) return {x, 1.0};
  return {(x + h) * (x + h) / (2.0 * eps), (x + h) / eps};
}

double plus_smooth_curvature(double eps, double x) {
  if (!(eps > 0.0)) throw std::invalid_argument("plus_smooth: eps must be positive");
  return std::abs(x) <= 0.5 * eps ? 1.0 / eps : 0.0;
}

namespace {

void require_branches(const SuperpotentialSpec& spec) {
  if (spec.branches.empty()) throw std::invalid_argument("superpotential '" + spec.name + "' has no branches");
}

double branch_curvature(const Branch& b, double s, double x) {
  if (b.ddg) return b.ddg(s, x);
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (b.dg(s, x + h) - b.dg(s, x - h)) / (2.0 * h);
}

// Nested arguments w_k (k = 2..m) and their first two derivatives, stored at
// index k - 1; index 0 is unused.
struct Nest {
  std::vector<double> w, dw, ddw;
};

Nest nest(const SuperpotentialSpec& spec, double eps, double s, double x, bool second) {
  const int m = spec.m();
  Nest n{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  double next_w = 0.0, next_dw = 0.0, next_ddw = 0.0;
  for (int k = m - 1; k >= 1; --k) {
    const Branch& hi = spec.branches[k];
    const Branch& lo = spec.branches[k - 1];
    double w = hi.g(s, x) - lo.g(s, x);
    double dw = hi.dg(s, x) - lo.dg(s, x);
    double ddw = second ? branch_curvature(hi, s, x) - branch_curvature(lo, s, x) : 0.0;
    if (k < m - 1) {
      const PlusValue p = plus_smooth(eps, next_w);
      w += p.value;
      if (second) ddw += plus_smooth_curvature(eps, next_w) * next_dw * next_dw + p.slope * next_ddw;
      dw += p.slope * next_dw;
    }
    n.w[k] = w;
    n.dw[k] = dw;
    n.ddw[k] = ddw;
    next_w = w;
    next_dw = dw;
    next_ddw = ddw;
  }
  return n;
}

}  // namespace

double max_branch_value(const SuperpotentialSpec& spec, double s, double x) {
  require_branches(spec);
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& b : spec.branches) v = std::max(v, b.g(s, x));
  return v;
}

double superpotential_value(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x) {
  require_branches(spec);
  const double g1 = spec.branches[0].g(s, x);
  if (spec.m() == 1) return g1;
  const Nest n = nest(spec, params.epsilon, s, x, false);
  return g1 + plus_smooth(params.epsilon, n.w[1]).value;
}

SlopeResult superpotential_slope(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x) {
  require_branches(spec);
  const int m = spec.m();
  SlopeResult r{0.0, std::vector<double>(m, 0.0)};
  if (m == 1) {
    r.weights[0] = 1.0;
    r.slope = spec.branches[0].dg(s, x);
    return r;
  }
  const Nest n = nest(spec, params.epsilon, s, x, false);
  // prod[k] = sigma_2 ... sigma_{k+1}, with sigma_k = P'(w_k); prod[0] = 1.
  std::vector<double> prod(m + 1, 0.0);
  prod[0] = 1.0;
  for (int k = 1; k < m; ++k) prod[k] = prod[k - 1] * plus_smooth(params.epsilon, n.w[k]).slope;
  for (int k = 0; k < m; ++k) {
    r.weights[k] = prod[k] - prod[k + 1];
    r.slope += r.weights[k] * spec.branches[k].dg(s, x);
  }
  return r;
}

double superpotential_curvature(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x) {
  require_branches(spec);
  const double g1 = branch_curvature(spec.branches[0], s, x);
  if (spec.m() == 1) return g1;
  const Nest n = nest(spec, params.epsilon, s, x, true);
  const double eps = params.epsilon;
  return g1 + plus_smooth_curvature(eps, n.w[1]) * n.dw[1] * n.dw[1] + plus_smooth(eps, n.w[1]).slope * n.ddw[1];
}

bool near_kink(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x, double margin) {
  require_branches(spec);
  if (spec.m() == 1) return false;
  const Nest n = nest(spec, params.epsilon, s, x, false);
  for (int k = 1; k < spec.m(); ++k)
    if (std::abs(std::abs(n.w[k]) - 0.5 * params.epsilon) < margin) return true;
  return false;
}

std::pair<double, double> clarke_gradient(const SuperpotentialSpec& spec, double s, double x) {
  const double top = max_branch_value(spec, s, x);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& b : spec.branches) {
    if (b.g(s, x) >= top - 1e-12) {
      const double d = b.dg(s, x);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  return {lo, hi};
}

double clarke_dirderiv(const SuperpotentialSpec& spec, double s, double x, double dir) {
  const auto [lo, hi] = clarke_gradient(spec, s, x);
  return dir >= 0.0 ? hi * dir : lo * dir;
}

SmoothingBoundReport smoothing_error_bound_check(const SuperpotentialSpec& spec, const SmoothingParams& params,
                                                 std::span<const double> grid, double s) {
  SmoothingBoundReport r;
  r.bound = (spec.m() - 1) * params.kappa * params.epsilon;
  for (double x : grid) {
    const double gap = std::abs(superpotential_value(spec, params, s, x) - max_branch_value(spec, s, x));
    if (gap > r.max_gap) {
      r.max_gap = gap;
      r.worst_x = x;
    }
  }
  r.ok = r.max_gap <= r.bound;
  if (!r.ok) {
    std::ostringstream msg;
    msg << "smoothing gap " << r.max_gap << " at x = " << r.worst_x << " exceeds (m-1) kappa eps = " << r.bound;
    r.message = msg.str();
  }
  return r;
}

double estimate_onesided_constant(const SuperpotentialSpec& spec, const SmoothingParams& params, double lo,
                                  double hi, int n_samples, double s) {
  if (n_samples < 2) throw std::invalid_argument("estimate_onesided_constant needs at least two samples");
  std::vector<double> x(n_samples), slope(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    x[i] = lo + (hi - lo) * i / (n_samples - 1);
    slope[i] = superpotential_slope(spec, params, s, x[i]).slope;
  }
  // A secant over [x_i, x_j] is a weighted mean of the adjacent secants in
  // between, so the maximum over all pairs is attained by neighbours.
  double alpha = 0.0;
  for (int i = 0; i + 1 < n_samples; ++i) alpha = std::max(alpha, -(slope[i + 1] - slope[i]) / (x[i + 1] - x[i]));
  return alpha;
}

GrowthConstants measure_growth_constants(const SuperpotentialSpec& spec, std::span<const double> grid, double s) {
  require_branches(spec);
  GrowthConstants gc;
  for (double x : grid) {
    // The extremes of the generalized gradient bound every eta in it.
    const auto [lo, hi] = clarke_gradient(spec, s, x);
    for (double eta : {lo, hi}) {
      gc.c = std::max(gc.c, std::abs(eta) / (1.0 + std::abs(x)));
      if (x != 0.0) gc.d = std::max(gc.d, -eta * x / std::abs(x));
    }
  }
  return gc;
}

double branch_derivative_error(const SuperpotentialSpec& spec, std::span<const double> grid, double s) {
  require_branches(spec);
  double worst = 0.0;
  for (const auto& b : spec.branches) {
    for (double x : grid) {
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fd = (b.g(s, x + h) - b.g(s, x - h)) / (2.0 * h);
      const double d = b.dg(s, x);
      worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
    }
  }
  return worst;
}

}  // namespace hvi
