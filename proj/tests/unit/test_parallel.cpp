#include <random>

#include <doctest.h>

#include "hvi/bem.hpp"
#include "hvi/fem.hpp"

using namespace hvi;

namespace {

Mesh2D scaled_square(int level) {
  const std::vector<Point2> sq = {{-0.2, -0.2}, {0.2, -0.2}, {0.2, 0.2}, {-0.2, 0.2}};
  const std::vector<Label> lab = {Label::S, Label::T, Label::T, Label::T};
  Mesh2D m = build_polygon_mesh(sq, 0.15, lab);
  for (int l = 0; l < level; ++l) m = refine_uniform(m);
  return m;
}

Vec random_vec(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = U(gen);
  return v;
}

double max_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("FEM kernels match the serial reference for every thread count") {
  const Mesh2D m = scaled_square(3);
  const MaterialLaw mat = rational_material();
  const Vec u = random_vec(m.num_vertices(), 1);
  const Vec r_ref = reference::assemble_dg_residual(m, mat, u);
  const Mat T_ref(reference::assemble_dg_tangent(m, mat, u));
  const int saved = thread_count();
  for (int threads : {1, 2, 4, 7}) {
    set_thread_count(threads);
    CHECK(max_diff(assemble_dg_residual(m, mat, u), r_ref) == 0.0);
    CHECK(max_diff(Mat(assemble_dg_tangent(m, mat, u)), T_ref) == 0.0);
  }
  set_thread_count(saved);
}

TEST_CASE("BEM kernels match the serial reference for every thread count") {
  const Mesh2D m = scaled_square(2);
  const BoundaryCurve c = boundary_curve(m);
  const Mat V_ref = reference::assemble_V(c);
  const Mat K_ref = reference::assemble_K(c);
  const int saved = thread_count();
  for (int threads : {1, 2, 4, 7}) {
    set_thread_count(threads);
    CHECK(max_diff(assemble_V(c), V_ref) == 0.0);
    CHECK(max_diff(assemble_K(c), K_ref) == 0.0);
    const SteklovOperator a = build_steklov(m, {}, Execution::parallel);
    const SteklovOperator b = build_steklov(m, {}, Execution::serial);
    CHECK(max_diff(a.S, b.S) == 0.0);
  }
  set_thread_count(saved);
}
