#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hvi {

/// One smooth branch g_i(s, x) of a max-type superpotential. s is the arc
/// position on Gamma_s, x the slip. ddg may be left empty; it is then
/// approximated by central differences of dg.
struct Branch {
  std::function<double(double s, double x)> g;
  std::function<double(double s, double x)> dg;
  std::function<double(double s, double x)> ddg;
};

/// j(s, x) = max_i g_i(s, x), smoothed as a right-to-left nest of P(eps, .).
struct SuperpotentialSpec {
  std::string name;
  std::vector<Branch> branches;
  // Optional growth constants per branch: |g_i'| <= c_i (1 + |x|),
  // g_i' x >= -d_i |x|.
  std::vector<double> c;
  std::vector<double> d;
  std::optional<double> alpha;  // declared one-sided Lipschitz constant

  int m() const { return static_cast<int>(branches.size()); }
};

struct SmoothingParams {
  double epsilon = 0.1;
  double kappa = 0.25;  // first absolute moment of the density
  std::string density = "zang";
};

/// Validates epsilon > 0 and the density tag; returns kappa for the tag.
double density_kappa(const std::string& density);
void validate_params(const SmoothingParams& params);

struct PlusValue {
  double value;
  double slope;
};

/// Plus function smoothed with the uniform (Zang) density on [-eps/2, eps/2].
PlusValue plus_smooth(double eps, double x);
/// Second derivative of plus_smooth; the kink lines x = +-eps/2 take the
/// middle-branch value 1/eps.
double plus_smooth_curvature(double eps, double x);

double max_branch_value(const SuperpotentialSpec& spec, double s, double x);
double superpotential_value(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x);

struct SlopeResult {
  double slope;
  std::vector<double> weights;  // Lambda_i, a convex combination
};

/// d/dx of the smoothed superpotential, as sum_i Lambda_i g_i'.
SlopeResult superpotential_slope(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x);
double superpotential_curvature(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x);

/// Interval [min, max] of active branch gradients (activity tolerance 1e-12).
std::pair<double, double> clarke_gradient(const SuperpotentialSpec& spec, double s, double x);
double clarke_dirderiv(const SuperpotentialSpec& spec, double s, double x, double dir);

/// True if some nested argument lies within `margin` of a kink line of P.
bool near_kink(const SuperpotentialSpec& spec, const SmoothingParams& params, double s, double x, double margin);

struct SmoothingBoundReport {
  double max_gap = 0.0;
  double bound = 0.0;
  double worst_x = 0.0;
  bool ok = true;
  std::string message;
};

SmoothingBoundReport smoothing_error_bound_check(const SuperpotentialSpec& spec, const SmoothingParams& params,
                                                 std::span<const double> grid, double s = 0.0);

/// max over sample pairs of -(slope(x1) - slope(x2)) / (x1 - x2), floored at 0.
double estimate_onesided_constant(const SuperpotentialSpec& spec, const SmoothingParams& params, double lo,
                                  double hi, int n_samples, double s = 0.0);

struct GrowthConstants {
  double c = 0.0;
  double d = 0.0;
};

/// Smallest c, d with |eta| <= c (1 + |x|) and eta x >= -d |x| for every eta in
/// the generalized gradient of max_i g_i at the grid points.
GrowthConstants measure_growth_constants(const SuperpotentialSpec& spec, std::span<const double> grid,
                                         double s = 0.0);
/// Largest relative mismatch between g_i' and central differences of g_i.
double branch_derivative_error(const SuperpotentialSpec& spec, std::span<const double> grid, double s = 0.0);

// Catalog.
SuperpotentialSpec tresca(double g);
SuperpotentialSpec linear_friction(double q);
SuperpotentialSpec linear_friction(std::function<double(double s)> q, double q_max);
SuperpotentialSpec nonconvex(double g, double beta);
SuperpotentialSpec superpotential_by_name(const std::string& name, std::span<const double> params);

}  // namespace hvi
