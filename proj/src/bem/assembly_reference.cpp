#include "hvi/bem.hpp"
#include "pair_rules.hpp"

namespace hvi::reference {

Mat assemble_V(const BoundaryCurve& curve, const BemOptions& opt) {
  const int n = curve.num_panels();
  Mat V(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      V(i, j) = detail::v_entry(curve, i, j, opt.gauss_order);
      V(j, i) = V(i, j);
    }
  }
  return V;
}

Mat assemble_K(const BoundaryCurve& curve, const BemOptions& opt) {
  const int n = curve.num_panels();
  Mat K = Mat::Zero(n, curve.num_nodes());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      detail::k_accumulate(curve, i, j, opt.gauss_order, [&](int c) -> double& { return K(i, c); });
  return K;
}

}  // namespace hvi::reference
