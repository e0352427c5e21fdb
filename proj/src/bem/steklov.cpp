#include <Eigen/Eigenvalues>

#include "hvi/bem.hpp"

namespace hvi {

Vec SteklovOperator::neumann_datum(const Vec& g) const { return V_factor.solve(-(C * g)); }

SteklovOperator build_steklov(BoundaryOperatorSet ops) {
  SteklovOperator st;
  st.V_factor.compute(ops.V);
  if (st.V_factor.info() != Eigen::Success)
    throw BemError("single layer matrix is not positive definite; scale the domain to diameter < 1");
  st.C = 0.5 * ops.M - ops.K;
  const Mat Y = st.V_factor.matrixL().solve(st.C);
  Mat S = ops.W + Y.transpose() * Y;
  st.S = 0.5 * (S + S.transpose());
  st.ops = std::move(ops);
  return st;
}

SteklovOperator build_steklov(const Mesh2D& mesh, const BemOptions& opt, Execution exec) {
  if (boundary_diameter(mesh) >= 1.0)
    throw BemError("boundary diameter " + std::to_string(boundary_diameter(mesh)) + " is not below 1");
  return build_steklov(assemble_operators(boundary_curve(mesh), opt, exec));
}

double min_generalized_eigenvalue(const Mat& A, const Mat& B) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw BemError("generalized eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace hvi
