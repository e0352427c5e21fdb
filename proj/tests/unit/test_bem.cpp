#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "hvi/bem.hpp"
#include "hvi/fem.hpp"

using namespace hvi;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<Point2> square_points(double side, int per_side) {
  const double a = 0.5 * side;
  const Point2 corners[4] = {{-a, -a}, {a, -a}, {a, a}, {-a, a}};
  std::vector<Point2> pts;
  for (int s = 0; s < 4; ++s)
    for (int k = 0; k < per_side; ++k)
      pts.push_back(corners[s] + (corners[(s + 1) % 4] - corners[s]) * (double(k) / per_side));
  return pts;
}

std::vector<Point2> circle_points(double r, int n) {
  std::vector<Point2> pts;
  for (int k = 0; k < n; ++k) pts.push_back(r * Point2{std::cos(2 * pi * k / n), std::sin(2 * pi * k / n)});
  return pts;
}

// P1 mass matrix on a closed polyline.
Mat curve_mass(const BoundaryCurve& c) {
  Mat M = Mat::Zero(c.num_nodes(), c.num_nodes());
  for (const auto& p : c.panels) {
    M(p.a, p.a) += p.length / 3;
    M(p.b, p.b) += p.length / 3;
    M(p.a, p.b) += p.length / 6;
    M(p.b, p.a) += p.length / 6;
  }
  return M;
}

// int_0^s int_0^t (1/2) ln(x^2 + y^2) dy dx, checked symbolically.
double corner_antiderivative(double s, double t) {
  return 0.5 * (s * t * (std::log(s * s + t * t) - 3.0) + s * s * std::atan(t / s) + t * t * std::atan(s / t));
}

double rel_max(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {1, 4, 8, 16}) {
    const auto [x, w] = gauss_legendre(n);
    for (int deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], deg);
      CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("single panel V entry matches the closed form") {
  const double L = 0.5;
  const std::vector<Point2> pts = {{0, 0}, {L, 0}};
  const Mat V = assemble_V(polyline_curve(pts, false));
  const double exact = L * L / (2 * pi) * (1.5 - std::log(L));
  CHECK(std::abs(V(0, 0) - exact) <= 1e-10);
  CHECK(V(0, 0) == doctest::Approx(0.0872625536785422).epsilon(1e-13));
}

TEST_CASE("adjacent collinear unit panels") {
  const std::vector<Point2> pts = {{0, 0}, {1, 0}, {2, 0}};
  const Mat V = assemble_V(polyline_curve(pts, false));
  const double exact = -(1 / (2 * pi)) * (2 * std::log(2.0) - 1.5);
  CHECK(std::abs(V(0, 1) - exact) <= 1e-10);
  CHECK(std::abs(V(1, 0) - exact) <= 1e-10);
}

TEST_CASE("adjacent perpendicular panels match the corner antiderivative") {
  for (auto [a, b] : {std::pair{0.3, 0.2}, std::pair{0.1, 0.25}}) {
    // Panel 0 runs from (a, 0) to the corner, panel 1 from the corner to (0, b).
    const std::vector<Point2> pts = {{a, 0}, {0, 0}, {0, b}};
    const Mat V = assemble_V(polyline_curve(pts, false));
    const double exact = -(1 / (2 * pi)) * corner_antiderivative(a, b);
    CHECK(std::abs(V(0, 1) - exact) <= 1e-10);
  }
}

TEST_CASE("operator symmetry and the kernel of W") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 16), true);
  const BoundaryOperatorSet ops = assemble_operators(c);
  CHECK((ops.V - ops.V.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * ops.V.cwiseAbs().maxCoeff());
  CHECK((ops.W - ops.W.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * ops.W.cwiseAbs().maxCoeff());
  const Vec one = Vec::Ones(c.num_nodes());
  CHECK((ops.W * one).cwiseAbs().maxCoeff() <= 1e-12 * ops.W.cwiseAbs().maxCoeff());
  CHECK(ops.V.allFinite());
  CHECK(ops.K.allFinite());
  Eigen::SelfAdjointEigenSolver<Mat> es(ops.V);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  Eigen::SelfAdjointEigenSolver<Mat> ew(ops.W);
  CHECK(ew.eigenvalues().minCoeff() >= -1e-14 * ew.eigenvalues().maxCoeff());
  CHECK(ew.eigenvalues()(1) > 1e-8 * ew.eigenvalues().maxCoeff());  // one-dimensional kernel
}

TEST_CASE("collinear panels give zero K entries") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 4), true);
  const Mat K = assemble_K(c);
  // Panels 0..3 lie on the bottom side; the hats of nodes 1..3 live on it.
  for (int i = 0; i < 4; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(K(i, j) == 0.0);
}

TEST_CASE("double layer of the constant density") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 8), true);
  const Mat K = assemble_K(c);
  const Vec k1 = K * Vec::Ones(c.num_nodes());
  for (int i = 0; i < c.num_panels(); ++i) CHECK(std::abs(k1[i] + 0.5 * c.panels[i].length) <= 1e-12);
  // Direct potential evaluation: the double layer potential of 1 vanishes outside.
  const std::vector<Point2> outside = {{0.5, 0.0}, {0.0, -0.6}, {0.45, 0.45}};
  const Vec u = reconstruct_exterior(c, Vec::Ones(c.num_nodes()), Vec::Zero(c.num_panels()), outside);
  CHECK(u.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("K self-convergence in the Gauss order") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 8), true);
  const Mat K8 = assemble_K(c, {8});
  const Mat K16 = assemble_K(c, {16});
  CHECK((K8 - K16).cwiseAbs().maxCoeff() <= 1e-10);
  const Mat V8 = assemble_V(c, {8});
  const Mat V16 = assemble_V(c, {16});
  CHECK((V8 - V16).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("W on a hat function equals the independently assembled V pairing") {
  const int n = 8;
  const BoundaryCurve c = polyline_curve(square_points(0.4, n), true);
  const Mat V = assemble_V(c);
  const Mat W = assemble_W(c, V);
  const double L = 0.4 / n;
  for (int k : {0, 3, 11}) {
    const int in = (k + c.num_panels() - 1) % c.num_panels();  // panel ending at node k
    const double oracle = (V(in, in) - 2 * V(in, k) + V(k, k)) / (L * L);
    CHECK(W(k, k) == doctest::Approx(oracle).epsilon(1e-13));
  }
}

TEST_CASE("256 panels assemble quickly and symmetric") {
  const auto t0 = std::chrono::steady_clock::now();
  const BoundaryCurve c = polyline_curve(square_points(0.4, 64), true);
  const BoundaryOperatorSet ops = assemble_operators(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("256-panel assembly: " << secs << " s");
  CHECK(secs < 5.0);
  CHECK((ops.V - ops.V.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * ops.V.cwiseAbs().maxCoeff());
}

TEST_CASE("Steklov operator is symmetric positive definite") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 8), true);
  const SteklovOperator st = build_steklov(assemble_operators(c));
  CHECK((st.S - st.S.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * st.S.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Mat> es(st.S);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK((st.S * Vec::Ones(st.size())).norm() > 1e-3);
  CHECK(min_generalized_eigenvalue(st.S, curve_mass(c)) > 0.0);
}

TEST_CASE("unscaled geometry is rejected") {
  const BoundaryCurve c = polyline_curve(square_points(2.0, 4), true);
  CHECK_THROWS_AS(build_steklov(assemble_operators(c)), BemError);
  const std::vector<Point2> sq = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  const std::vector<Label> lab = {Label::S, Label::T, Label::T, Label::T};
  CHECK_THROWS_AS(build_steklov(build_polygon_mesh(sq, 1.0, lab)), BemError);
}

TEST_CASE("circle Steklov eigenvalues approximate k / r") {
  const double r = 0.4;
  const BoundaryCurve c = polyline_curve(circle_points(r, 64), true);
  const SteklovOperator st = build_steklov(assemble_operators(c));
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(st.S, curve_mass(c));
  const Vec lam = es.eigenvalues();
  // Modes k = 1 (twice), the constant mode, then k = 2 (twice).
  CHECK(std::abs(lam[0] / (1 / r) - 1) < 0.05);
  CHECK(std::abs(lam[1] / (1 / r) - 1) < 0.05);
  CHECK(std::abs(lam[3] / (2 / r) - 1) < 0.05);
  CHECK(std::abs(lam[4] / (2 / r) - 1) < 0.05);
}

TEST_CASE("exterior reconstruction of a constant") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 8), true);
  const std::vector<Point2> pts = {{0.5, 0.1}, {-0.7, 0.3}, {2.0, -3.0}};
  const Vec u = reconstruct_exterior(c, Vec::Zero(c.num_nodes()), Vec::Zero(c.num_panels()), pts, 5.0);
  for (int i = 0; i < u.size(); ++i) CHECK(u[i] == 5.0);
  const std::vector<Point2> close = {{0.205, 0.0}};
  CHECK_THROWS_AS(reconstruct_exterior(c, Vec::Zero(c.num_nodes()), Vec::Zero(c.num_panels()), close), BemError);
}

TEST_CASE("exterior dipole is reconstructed with decaying error") {
  const Point2 z{0.03, 0.02};
  auto dipole = [&](const Point2& x) { return (x - z).x() / (x - z).squaredNorm(); };
  const std::vector<Point2> probes = {{0.5, 0.0}, {0.0, 0.5}, {-0.45, 0.3}, {0.6, 0.6}};
  std::vector<double> errs;
  for (int n : {4, 8, 16, 32}) {
    const BoundaryCurve c = polyline_curve(square_points(0.4, n), true);
    const SteklovOperator st = build_steklov(assemble_operators(c));
    Vec g(c.num_nodes());
    for (int i = 0; i < c.num_nodes(); ++i) g[i] = dipole(c.nodes[i]);
    const Vec u = reconstruct_exterior(c, g, st.neumann_datum(g), probes);
    double e = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) e = std::max(e, std::abs(u[k] - dipole(probes[k])));
    errs.push_back(e);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    MESSAGE("dipole probe error ratio " << errs[i - 1] / errs[i]);
    CHECK(errs[i] < 0.5 * errs[i - 1]);
  }
}

TEST_CASE("reconstructed field is harmonic") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 16), true);
  const SteklovOperator st = build_steklov(assemble_operators(c));
  Vec g(c.num_nodes());
  for (int i = 0; i < c.num_nodes(); ++i) g[i] = c.nodes[i].x() * c.nodes[i].y() + c.nodes[i].x();
  const Vec psi = st.neumann_datum(g);
  const Point2 x0{0.45, 0.15};
  for (double step : {0.02, 0.01}) {
    const std::vector<Point2> stencil = {x0, x0 + Point2{step, 0}, x0 - Point2{step, 0}, x0 + Point2{0, step},
                                         x0 - Point2{0, step}};
    const Vec u = reconstruct_exterior(c, g, psi, stencil);
    const double lap = (u[1] + u[2] + u[3] + u[4] - 4 * u[0]) / (step * step);
    MESSAGE("FD Laplacian at step " << step << ": " << lap);
    CHECK(std::abs(lap) < 50.0 * step * step + 1e-6);
  }
}

TEST_CASE("assembly is deterministic and matches the serial reference") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 12), true);
  const Mat V1 = assemble_V(c), V2 = assemble_V(c);
  CHECK((V1 - V2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(rel_max(assemble_V(c, {}, Execution::serial), V1) == 0.0);
  CHECK(rel_max(assemble_K(c, {}, Execution::serial), assemble_K(c)) == 0.0);
}

TEST_CASE("bemops round trip") {
  const BoundaryCurve c = polyline_curve(square_points(0.4, 4), true);
  const Mat K = assemble_K(c);
  std::stringstream ss;
  write_bemops(ss, K);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 16 + 8 * static_cast<std::size_t>(K.size()));
  CHECK(bytes.substr(0, 8) == "bemopsv1");
  std::stringstream in(bytes);
  const Mat R = read_bemops(in);
  CHECK(R.rows() == K.rows());
  CHECK(R.cols() == K.cols());
  CHECK((R - K).cwiseAbs().maxCoeff() == 0.0);

  std::stringstream bad("bemopsv2" + bytes.substr(8));
  CHECK_THROWS_AS(read_bemops(bad), BemError);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_bemops(truncated), BemError);
  std::stringstream trailing(bytes + "x");
  CHECK_THROWS_AS(read_bemops(trailing), BemError);
}

TEST_CASE("mesh boundary curve follows the boundary loop") {
  const std::vector<Point2> sq = {{-0.2, -0.2}, {0.2, -0.2}, {0.2, 0.2}, {-0.2, 0.2}};
  const std::vector<Label> lab = {Label::S, Label::T, Label::T, Label::T};
  const Mesh2D m = refine_uniform(build_polygon_mesh(sq, 0.2, lab));
  const BoundaryCurve c = boundary_curve(m);
  const auto bv = boundary_vertices(m);
  REQUIRE(c.num_nodes() == static_cast<int>(bv.size()));
  for (int k = 0; k < c.num_nodes(); ++k) CHECK((c.nodes[k] - m.vertices[bv[k]]).norm() == 0.0);
  for (int k = 0; k < c.num_panels(); ++k) CHECK((c.panels[k].normal - edge_normal(m, k)).norm() <= 1e-15);
}
