#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <doctest.h>

#include "hvi/mesh.hpp"

using namespace hvi;

namespace {

const std::vector<Point2> unit_square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Label> bottom_s = {Label::S, Label::T, Label::T, Label::T};

}  // namespace

TEST_CASE("unit square at h 0.5 satisfies the mesh invariants") {
  const Mesh2D m = build_polygon_mesh(unit_square, 0.5, bottom_s);
  CHECK_NOTHROW(validate_mesh(m));
  CHECK(max_diameter(m) <= 0.5 + 1e-14);
  int bottom = 0;
  for (const auto& e : m.boundary_edges)
    if (e.label == Label::S) ++bottom;
  CHECK(bottom <= 4);
  CHECK(boundary_length(m, Label::S) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(boundary_length(m, Label::T) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("every triangle diameter respects h_target") {
  const Mesh2D m = build_polygon_mesh(unit_square, 0.25, bottom_s);
  for (int t = 0; t < m.num_triangles(); ++t) CHECK(triangle_diameter(m, t) <= 0.25 + 1e-14);
  CHECK(m.h <= 0.25 + 1e-14);
}

TEST_CASE("L-shaped hexagon meshes conformingly with positive areas") {
  const std::vector<Point2> L = {{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}};
  const std::vector<Label> labels = {Label::S, Label::T, Label::T, Label::T, Label::T, Label::S};
  const Mesh2D m = build_polygon_mesh(L, 0.5, labels);
  CHECK_NOTHROW(validate_mesh(m));
  double area = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    CHECK(triangle_area(m, t) > 0.0);
    area += triangle_area(m, t);
  }
  CHECK(area == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(max_diameter(m) <= 0.5 + 1e-14);
}

TEST_CASE("polygon errors") {
  const std::vector<Point2> bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(build_polygon_mesh(bowtie, 0.5, bottom_s), MeshError);
  const std::vector<Label> all_t(4, Label::T);
  CHECK_THROWS_AS(build_polygon_mesh(unit_square, 0.5, all_t), MeshError);
  const std::vector<Label> all_s(4, Label::S);
  CHECK_THROWS_AS(build_polygon_mesh(unit_square, 0.5, all_s), MeshError);
  const std::vector<Point2> cw = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK_THROWS_AS(build_polygon_mesh(cw, 0.5, bottom_s), MeshError);
}

TEST_CASE("red refinement quadruples triangles, halves h and nests vertices") {
  const Mesh2D m0 = build_polygon_mesh(unit_square, 0.5, bottom_s);
  const Mesh2D m1 = refine_uniform(m0);
  const Mesh2D m2 = refine_uniform(m1);
  CHECK(m1.num_triangles() == 4 * m0.num_triangles());
  CHECK(m2.num_triangles() == 16 * m0.num_triangles());
  CHECK(m1.h == doctest::Approx(0.5 * m0.h).epsilon(1e-14));
  CHECK(m1.level == 1);
  CHECK_NOTHROW(validate_mesh(m2));
  for (int i = 0; i < m0.num_vertices(); ++i) CHECK((m2.vertices[i] - m0.vertices[i]).norm() == 0.0);
  CHECK(quasi_uniformity_ratio(m2) == doctest::Approx(quasi_uniformity_ratio(m0)).epsilon(1e-12));
  CHECK(boundary_length(m2, Label::S) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dual partition of a two-edge segment") {
  const Mesh2D m = build_polygon_mesh(unit_square, 0.75, bottom_s);
  const DualPartition d = dual_partition(m);
  int s_edges = 0;
  for (const auto& e : m.boundary_edges) s_edges += e.label == Label::S;
  REQUIRE(s_edges == 2);
  REQUIRE(d.size() == 3);
  CHECK(d.cells[0].length == doctest::Approx(0.25));
  CHECK(d.cells[1].length == doctest::Approx(0.5));
  CHECK(d.cells[2].length == doctest::Approx(0.25));
}

TEST_CASE("dual partition of a single edge gives two half cells") {
  const std::vector<Point2> tri = {{0, 0}, {0.5, 0}, {0, 0.5}};
  const std::vector<Label> labels = {Label::S, Label::T, Label::T};
  const Mesh2D m = build_polygon_mesh(tri, 1.0, labels);
  const DualPartition d = dual_partition(m);
  REQUIRE(d.size() == 2);
  CHECK(d.cells[0].length == doctest::Approx(0.25));
  CHECK(d.cells[1].length == doctest::Approx(0.25));
  CHECK(d.cells[0].left_edge == -1);
  CHECK(d.cells[1].right_edge == -1);
}

TEST_CASE("uniform n-edge dual partition and total length") {
  for (int level = 0; level < 4; ++level) {
    Mesh2D m = build_polygon_mesh(unit_square, 0.5, bottom_s);
    for (int l = 0; l < level; ++l) m = refine_uniform(m);
    const DualPartition d = dual_partition(m);
    const int n = d.size() - 1;
    CHECK(d.total_length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.cells.front().length == doctest::Approx(0.5 / n).epsilon(1e-12));
    CHECK(d.cells.back().length == doctest::Approx(0.5 / n).epsilon(1e-12));
    for (int i = 1; i < n; ++i) CHECK(d.cells[i].length == doctest::Approx(1.0 / n).epsilon(1e-12));
    for (int i = 1; i < d.size(); ++i) CHECK(d.cells[i].arc > d.cells[i - 1].arc);
  }
}

TEST_CASE("dual cells tile a multi-side Gamma_s") {
  const std::vector<Label> two = {Label::S, Label::S, Label::T, Label::T};
  Mesh2D m = refine_uniform(build_polygon_mesh(unit_square, 0.5, two));
  const DualPartition d = dual_partition(m);
  CHECK(d.total_length() == doctest::Approx(2.0).epsilon(1e-12));
  std::set<int> nodes;
  for (const auto& c : d.cells) nodes.insert(c.boundary_node);
  CHECK(static_cast<int>(nodes.size()) == d.size());
}

TEST_CASE("piecewise-constant interpolation") {
  const Mesh2D m = build_polygon_mesh(unit_square, 0.75, bottom_s);
  const DualPartition d = dual_partition(m);
  const std::vector<double> c(d.size(), 3.5);
  const auto pc = interpolate_pc(c, d);
  for (double x : pc) CHECK(x == 3.5);
  const std::vector<double> hat = {0.0, 1.0, 0.0};
  CHECK(interpolate_pc(hat, d) == hat);
  // Projection property.
  const std::vector<double> r = {0.3, -1.0, 2.0};
  CHECK(interpolate_pc(interpolate_pc(r, d), d) == interpolate_pc(r, d));
  CHECK_THROWS_AS(interpolate_pc(std::vector<double>{1.0, 2.0}, d), std::invalid_argument);
}

TEST_CASE("interpolation error of a hat function matches the exact integral") {
  // A P1 hat peaking at an interior Gamma_s node of a uniform n-edge segment.
  // On each of its two edges the cell value is 1 on the half next to the peak
  // and 0 on the far half.
  double prev = 0.0;
  for (int level = 1; level < 5; ++level) {
    Mesh2D m = build_polygon_mesh(unit_square, 0.5, bottom_s);
    for (int l = 0; l < level; ++l) m = refine_uniform(m);
    const DualPartition d = dual_partition(m);
    const int n = d.size() - 1;
    const double h = 1.0 / n;
    std::vector<double> v(d.size(), 0.0);
    v[n / 2] = 1.0;
    const double err = pc_interpolation_error_l2(m, d, v);
    // Each edge splits in two halves; error^2 on a half is h/2 * int_0^1 (s/2)^2 ds = h/24.
    const double exact = std::sqrt(4.0 * h / 24.0);
    CHECK(err == doctest::Approx(exact).epsilon(1e-12));
    if (prev > 0.0) CHECK(err / prev == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    prev = err;
  }
}

TEST_CASE("interpolation L2 stability constant stays bounded") {
  double cmax = 0.0;
  for (int level = 0; level < 5; ++level) {
    Mesh2D m = build_polygon_mesh(unit_square, 0.5, bottom_s);
    for (int l = 0; l < level; ++l) m = refine_uniform(m);
    const DualPartition d = dual_partition(m);
    std::vector<double> v(d.size());
    for (int i = 0; i < d.size(); ++i) v[i] = std::cos(7.0 * d.cells[i].arc) + (i % 2 ? 0.5 : -0.5);
    const double ratio = pc_norm_l2(interpolate_pc(v, d), d) / p1_norm_l2_gamma_s(m, d, v);
    cmax = std::max(cmax, ratio);
  }
  CHECK(cmax < std::sqrt(3.0) + 1e-12);
}

TEST_CASE("mesh text format round trip and rejection") {
  const Mesh2D m = refine_uniform(build_polygon_mesh(unit_square, 0.5, bottom_s));
  std::stringstream ss;
  write_mesh(ss, m);
  const std::string text = ss.str();
  CHECK(text.rfind("mesh2d v1\n", 0) == 0);
  std::stringstream in(text);
  const Mesh2D r = read_mesh(in);
  CHECK(r.num_vertices() == m.num_vertices());
  CHECK(r.triangles == m.triangles);
  REQUIRE(r.boundary_edges.size() == m.boundary_edges.size());
  for (std::size_t k = 0; k < r.boundary_edges.size(); ++k) CHECK(r.boundary_edges[k].label == m.boundary_edges[k].label);
  std::stringstream again;
  write_mesh(again, r);
  CHECK(again.str() == text);

  std::stringstream bad_header("mesh2d v2\nvertices 0\n");
  CHECK_THROWS_AS(read_mesh(bad_header), MeshError);
  std::stringstream trailing(text + "extra\n");
  CHECK_THROWS_AS(read_mesh(trailing), MeshError);
}

TEST_CASE("prolongation reproduces linear functions") {
  const Mesh2D m0 = build_polygon_mesh(unit_square, 0.5, bottom_s);
  const Mesh2D m1 = refine_uniform(m0);
  Vec c(m0.num_vertices());
  for (int i = 0; i < m0.num_vertices(); ++i) c[i] = 2.0 * m0.vertices[i].x() - m0.vertices[i].y() + 0.5;
  const Vec f = prolongate(m1, c);
  for (int i = 0; i < m1.num_vertices(); ++i)
    CHECK(f[i] == doctest::Approx(2.0 * m1.vertices[i].x() - m1.vertices[i].y() + 0.5).epsilon(1e-14));
}
