#include <cmath>
#include <random>

#include <doctest.h>

#include "hvi/fem.hpp"

using namespace hvi;

namespace {

const std::vector<Point2> unit_square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Label> bottom_s = {Label::S, Label::T, Label::T, Label::T};

Mesh2D square(int level) {
  Mesh2D m = build_polygon_mesh(unit_square, 0.5, bottom_s);
  for (int l = 0; l < level; ++l) m = refine_uniform(m);
  return m;
}

Vec random_vec(int n, unsigned seed, double amp = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> U(-amp, amp);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = U(gen);
  return v;
}

// Gradient of the P1 interpolant on triangle t from a hand-solved 2x2 system.
Point2 hand_gradient(const Mesh2D& m, int t, const Vec& u) {
  const auto& tri = m.triangles[t];
  const Point2 e1 = m.vertices[tri[1]] - m.vertices[tri[0]];
  const Point2 e2 = m.vertices[tri[2]] - m.vertices[tri[0]];
  const double d1 = u[tri[1]] - u[tri[0]], d2 = u[tri[2]] - u[tri[0]];
  const double det = e1.x() * e2.y() - e1.y() * e2.x();
  return {(d1 * e2.y() - d2 * e1.y()) / det, (e1.x() * d2 - e2.x() * d1) / det};
}

}  // namespace

TEST_CASE("material catalog") {
  const MaterialLaw lin = linear_material();
  const MaterialLaw rat = rational_material();
  CHECK(lin.p(3.0) == 1.0);
  CHECK(rat.p(0.0) == doctest::Approx(3.0));
  CHECK(rat.p(1.0) == doctest::Approx(2.5));
  CHECK_NOTHROW(validate_material(lin));
  CHECK_NOTHROW(validate_material(rat));
  CHECK(material_by_name("rational").name == "rational");
  CHECK_THROWS_AS(material_by_name("steel"), std::invalid_argument);
  MaterialLaw bad = lin;
  bad.p = [](double t) { return 1.0 / (1.0 + t * t); };  // t p(t) decreases for t > 1
  bad.dp = [](double t) { return -2.0 * t / ((1.0 + t * t) * (1.0 + t * t)); };
  CHECK_THROWS_AS(validate_material(bad), std::invalid_argument);
}

TEST_CASE("energy density integrates s p(s)") {
  CHECK(energy_density(linear_material(), 2.0) == doctest::Approx(2.0).epsilon(1e-13));
  // int_0^t s (2 + 1/(1+s)) ds = t^2 + t - ln(1+t)
  const double t = 1.7;
  CHECK(energy_density(rational_material(), t) == doctest::Approx(t * t + t - std::log1p(t)).epsilon(1e-12));
}

TEST_CASE("linear material residual equals the stiffness product") {
  const Mesh2D m = square(2);
  const Vec u = random_vec(m.num_vertices(), 1);
  const Vec r = assemble_dg_residual(m, linear_material(), u);
  const Vec Au = stiffness_matrix(m) * u;
  CHECK((r - Au).lpNorm<Eigen::Infinity>() <= 1e-13 * Au.lpNorm<Eigen::Infinity>());
}

TEST_CASE("constant state has zero residual") {
  const Mesh2D m = square(2);
  const Vec u = Vec::Constant(m.num_vertices(), 4.2);
  CHECK(assemble_dg_residual(m, rational_material(), u).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("rational material residual on u = x1 matches per-element hand assembly") {
  const Mesh2D m = square(2);
  Vec u(m.num_vertices());
  for (int i = 0; i < m.num_vertices(); ++i) u[i] = m.vertices[i].x();
  const Vec r = assemble_dg_residual(m, rational_material(), u);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const Vec w = random_vec(m.num_vertices(), 100 + seed);
    double oracle = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) oracle += triangle_area(m, t) * 2.5 * hand_gradient(m, t, w).x();
    CHECK(r.dot(w) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("tangent matches central differences of the residual") {
  const Mesh2D m = square(2);
  const MaterialLaw mat = rational_material();
  const Vec u = random_vec(m.num_vertices(), 7, 2.0);
  const SparseMat T = assemble_dg_tangent(m, mat, u);
  const double tau = 1e-5;
  for (unsigned seed = 0; seed < 4; ++seed) {
    const Vec w = random_vec(m.num_vertices(), 20 + seed);
    const Vec fd = (assemble_dg_residual(m, mat, u + tau * w) - assemble_dg_residual(m, mat, u - tau * w)) / (2 * tau);
    CHECK((T * w - fd).norm() <= 1e-6 * w.norm());
  }
  const Mat Td(T);
  CHECK((Td - Td.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * Td.cwiseAbs().maxCoeff());
}

TEST_CASE("tangent special cases") {
  const Mesh2D m = square(1);
  const Mat A(stiffness_matrix(m));
  const Vec u = random_vec(m.num_vertices(), 3);
  CHECK((Mat(assemble_dg_tangent(m, linear_material(), u)) - A).cwiseAbs().maxCoeff() <= 1e-14);
  const Vec zero = Vec::Zero(m.num_vertices());
  CHECK((Mat(assemble_dg_tangent(m, rational_material(), zero)) - 3.0 * A).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("residual is the gradient of the interior energy") {
  const Mesh2D m = square(1);
  const MaterialLaw mat = rational_material();
  const Vec u = random_vec(m.num_vertices(), 11, 1.5);
  const Vec r = assemble_dg_residual(m, mat, u);
  const double h = 1e-5;
  Vec fd(m.num_vertices());
  for (int i = 0; i < m.num_vertices(); ++i) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    fd[i] = (assemble_dg_energy(m, mat, up) - assemble_dg_energy(m, mat, um)) / (2 * h);
  }
  CHECK((fd - r).norm() <= 1e-6 * r.norm());
}

TEST_CASE("discrete strong monotonicity of the interior operator") {
  const Mesh2D m = square(2);
  const MaterialLaw mat = rational_material();
  const SparseMat A = stiffness_matrix(m);
  double c_min = 1e300;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Vec u = random_vec(m.num_vertices(), 200 + seed, 3.0);
    const Vec v = random_vec(m.num_vertices(), 300 + seed, 3.0);
    const Vec d = u - v;
    const double num = (assemble_dg_residual(m, mat, u) - assemble_dg_residual(m, mat, v)).dot(d);
    c_min = std::min(c_min, num / d.dot(A * d));
  }
  MESSAGE("measured c_G = " << c_min);
  CHECK(c_min >= 2.0 - 1e-12);  // inf p = 2 for the rational law
}

TEST_CASE("load vector quadrature") {
  const Mesh2D m = square(2);
  CHECK(assemble_load(m, [](const Point2&) { return 0.0; }).isZero(0.0));
  CHECK(assemble_load(m, [](const Point2&) { return 1.0; }).sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(assemble_load(m, [](const Point2& x) { return x.x(); }).sum() == doctest::Approx(0.5).epsilon(1e-12));
  // Quadratic integrand: int x1 * x2 over the unit square against the constant 1.
  Vec one = Vec::Ones(m.num_vertices());
  CHECK(assemble_load(m, [](const Point2& x) { return x.x() * x.y(); }).dot(one) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("boundary load and mass") {
  const Mesh2D m = square(1);
  const Vec bl = assemble_boundary_load(m, [](const Point2&, const Point2&) { return 1.0; });
  CHECK(bl.sum() == doctest::Approx(4.0).epsilon(1e-14));
  const Mat Mb = boundary_mass_matrix(m);
  const Vec one = Vec::Ones(Mb.rows());
  CHECK(one.dot(Mb * one) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mass_matrix(m).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trace selection matrix") {
  const Mesh2D m = square(1);
  const SparseMat G = trace_matrix(m);
  const TraceMap tr = make_trace(m);
  const Vec c = Vec::Constant(m.num_vertices(), 2.0);
  CHECK((G * c - Vec::Constant(G.rows(), 2.0)).isZero(0.0));
  CHECK((tr.apply(c) - Vec::Constant(tr.num_boundary(), 2.0)).isZero(0.0));
  // Find an interior vertex.
  std::vector<bool> on_boundary(m.num_vertices(), false);
  for (int v : boundary_vertices(m)) on_boundary[v] = true;
  int interior = -1;
  for (int i = 0; i < m.num_vertices(); ++i)
    if (!on_boundary[i]) interior = i;
  REQUIRE(interior >= 0);
  Vec e = Vec::Zero(m.num_vertices());
  e[interior] = 1.0;
  CHECK((G * e).isZero(0.0));
  const Mat GGt = Mat(G * SparseMat(G.transpose()));
  CHECK((GGt - Mat::Identity(G.rows(), G.rows())).isZero(0.0));
  const Vec w = random_vec(tr.num_boundary(), 5);
  CHECK((tr.apply_transpose(w) - G.transpose() * w).isZero(0.0));
}

TEST_CASE("dimension mismatch is rejected") {
  const Mesh2D m = square(0);
  const Vec u = Vec::Zero(m.num_vertices() + 1);
  CHECK_THROWS_AS(assemble_dg_residual(m, linear_material(), u), std::invalid_argument);
  CHECK_THROWS_AS(assemble_dg_tangent(m, linear_material(), u), std::invalid_argument);
}
