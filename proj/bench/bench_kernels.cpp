// Times the OpenMP kernels against their serial reference loops and checks
// that both paths agree bit for bit.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "hvi/bem.hpp"
#include "hvi/fem.hpp"

using namespace hvi;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-22s serial %9.4f ms  parallel %9.4f ms  speedup %5.2fx  %s\n", name, 1e3 * serial, 1e3 * parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int levels = argc > 1 ? std::atoi(argv[1]) : 5;
  if (argc > 2) set_thread_count(std::atoi(argv[2]));
  const std::vector<Point2> square = {{-0.2, -0.2}, {0.2, -0.2}, {0.2, 0.2}, {-0.2, 0.2}};
  const std::vector<Label> labels = {Label::S, Label::T, Label::T, Label::T};
  Mesh2D mesh = build_polygon_mesh(square, 0.15, labels);
  for (int i = 0; i < levels; ++i) mesh = refine_uniform(mesh);
  std::printf("threads %d, %d vertices, %d triangles, %d boundary panels\n", thread_count(), mesh.num_vertices(),
              mesh.num_triangles(), mesh.num_boundary_nodes());

  const MaterialLaw mat = rational_material();
  Vec u(mesh.num_vertices());
  for (int k = 0; k < mesh.num_vertices(); ++k) u[k] = std::sin(7.0 * mesh.vertices[k].x()) * mesh.vertices[k].y();

  Vec rs, rp;
  const double t_rs = seconds([&] { rs = assemble_dg_residual(mesh, mat, u, Execution::serial); }, 20);
  const double t_rp = seconds([&] { rp = assemble_dg_residual(mesh, mat, u, Execution::parallel); }, 20);
  report("fem residual", t_rs, t_rp, rs == rp);

  SparseMat ts, tp;
  const double t_ts = seconds([&] { ts = assemble_dg_tangent(mesh, mat, u, Execution::serial); }, 10);
  const double t_tp = seconds([&] { tp = assemble_dg_tangent(mesh, mat, u, Execution::parallel); }, 10);
  report("fem tangent", t_ts, t_tp, Mat(ts) == Mat(tp));

  const BoundaryCurve curve = boundary_curve(mesh);
  Mat vs, vp, ks, kp;
  const double t_vs = seconds([&] { vs = assemble_V(curve, {}, Execution::serial); }, 3);
  const double t_vp = seconds([&] { vp = assemble_V(curve, {}, Execution::parallel); }, 3);
  report("bem single layer", t_vs, t_vp, vs == vp);
  const double t_ks = seconds([&] { ks = assemble_K(curve, {}, Execution::serial); }, 3);
  const double t_kp = seconds([&] { kp = assemble_K(curve, {}, Execution::parallel); }, 3);
  report("bem double layer", t_ks, t_kp, ks == kp);
  return 0;
}
