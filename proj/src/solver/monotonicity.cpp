#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hvi/solver.hpp"

namespace hvi {

double steklov_constant(const DiscreteSystem& sys) {
  const int nv = sys.n_v();
  const Mat& S = sys.steklov->S;
  Mat A(nv, nv);
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) A(i, j) = S(sys.s_nodes[i], sys.s_nodes[j]);
  Mat B = Mat::Zero(nv, nv);
  for (int i = 0; i < nv; ++i) B(i, i) = sys.cell_lengths[i];
  return min_generalized_eigenvalue(A, B);
}

double friction_alpha(const DiscreteSystem& sys, double lo, double hi, int samples) {
  double alpha = 0.0;
  // Branches may depend on the arc position; sample at every Gamma_s node.
  for (int i = 0; i < sys.n_v(); ++i)
    alpha = std::max(alpha, estimate_onesided_constant(sys.spec, sys.params, lo, hi, samples, sys.arc[i]));
  return alpha;
}

double e_norm(const DiscreteSystem& sys, const Vec& du, const Vec& dv) {
  const SparseMat A = stiffness_matrix(sys.mesh);
  const SparseMat M = mass_matrix(sys.mesh);
  const Vec w = sys.embed_s(dv);
  std::vector<double> dvs(dv.data(), dv.data() + dv.size());
  const double l2 = p1_norm_l2_gamma_s(sys.mesh, sys.dual, dvs);
  const double sq = du.dot(A * du) + du.dot(M * du) + l2 * l2 + w.dot(sys.steklov->S * w);
  return std::sqrt(std::max(sq, 0.0));
}

double e_norm(const DiscreteSystem& sys, const Vec& dX) {
  return e_norm(sys, dX.head(sys.n_u()), dX.segment(sys.n_u(), sys.n_v()));
}

namespace {

Vec random_state(const DiscreteSystem& sys, std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> U(-scale, scale);
  const double R = 0.5 * boundary_diameter(sys.mesh);
  const double c[6] = {U(rng), U(rng), U(rng), U(rng), U(rng), U(rng)};
  const double a[4] = {U(rng), U(rng), U(rng), U(rng)};
  const double arc_len = sys.dual.total_length();
  Vec X = Vec::Zero(sys.size());
  for (int k = 0; k < sys.n_u(); ++k) {
    const double x = sys.mesh.vertices[k].x() / R, y = sys.mesh.vertices[k].y() / R;
    X[k] = c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
  }
  for (int i = 0; i < sys.n_v(); ++i) {
    const double t = std::numbers::pi * sys.arc[i] / arc_len;
    X[sys.n_u() + i] = a[0] + a[1] * std::sin(t) + a[2] * std::sin(2 * t) + a[3] * std::sin(3 * t);
  }
  return X;
}

}  // namespace

MonotonicityReport measure_monotonicity(const DiscreteSystem& sys, int pairs, unsigned seed, double scale) {
  std::mt19937 rng(seed);
  MonotonicityReport rep;
  rep.min_ratio_e = std::numeric_limits<double>::infinity();
  rep.min_ratio_v = std::numeric_limits<double>::infinity();
  const int nuv = sys.n_u() + sys.n_v();
  for (int p = 0; p < pairs; ++p) {
    const Vec X1 = random_state(sys, rng, scale);
    const Vec X2 = random_state(sys, rng, scale);
    // The multiplier is zero in both states, so only the (u, v) operator enters.
    const Vec dF = residual(sys, X1) - residual(sys, X2);
    const Vec dX = X1 - X2;
    const double pairing = dF.head(nuv).dot(dX.head(nuv));
    const double en = e_norm(sys, dX);
    double lumped = 0.0;
    for (int i = 0; i < sys.n_v(); ++i) lumped += sys.cell_lengths[i] * dX[sys.n_u() + i] * dX[sys.n_u() + i];
    rep.min_ratio_e = std::min(rep.min_ratio_e, pairing / (en * en));
    rep.min_ratio_v = std::min(rep.min_ratio_v, pairing / lumped);
    ++rep.pairs;
  }
  return rep;
}

}  // namespace hvi
