#include "hvi/bem.hpp"
#include "pair_rules.hpp"

namespace hvi {

Mat assemble_V(const BoundaryCurve& curve, const BemOptions& opt, Execution exec) {
  if (exec == Execution::serial) return reference::assemble_V(curve, opt);
  const int n = curve.num_panels();
  Mat V = Mat::Zero(n, n);
  // Upper triangle row by row; each entry is independent of the others.
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) V(i, j) = detail::v_entry(curve, i, j, opt.gauss_order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) V(i, j) = V(j, i);
  return V;
}

Mat assemble_K(const BoundaryCurve& curve, const BemOptions& opt, Execution exec) {
  if (exec == Execution::serial) return reference::assemble_K(curve, opt);
  const int n = curve.num_panels();
  Mat K = Mat::Zero(n, curve.num_nodes());
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    auto row = K.row(i);
    for (int j = 0; j < n; ++j) detail::k_accumulate(curve, i, j, opt.gauss_order, [&](int c) -> double& { return row(c); });
  }
  return K;
}

Mat assemble_W(const BoundaryCurve& curve, const Mat& V) {
  const Mat D = tangential_derivative(curve);
  Mat W = D.transpose() * V * D;
  return 0.5 * (W + W.transpose());
}

BoundaryOperatorSet assemble_operators(const BoundaryCurve& curve, const BemOptions& opt, Execution exec) {
  BoundaryOperatorSet ops;
  ops.curve = curve;
  ops.V = assemble_V(curve, opt, exec);
  ops.K = assemble_K(curve, opt, exec);
  ops.W = assemble_W(curve, ops.V);
  ops.M = duality_mass(curve);
  ops.D = tangential_derivative(curve);
  return ops;
}

}  // namespace hvi
