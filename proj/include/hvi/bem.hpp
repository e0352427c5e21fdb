#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>

#include "hvi/common.hpp"
#include "hvi/mesh.hpp"

namespace hvi {

// Boundary element discretization of the exterior Laplace problem with the
// fundamental solution E(x) = -(1/2pi) ln|x|.

struct Panel {
  int a = 0;  // start node
  int b = 0;  // end node
  double length = 0.0;
  Point2 tangent{0.0, 0.0};
  Point2 normal{0.0, 0.0};  // outward for a counterclockwise curve
};

/// Polygonal boundary: P1 densities live on nodes, P0 densities on panels.
struct BoundaryCurve {
  std::vector<Point2> nodes;
  std::vector<Panel> panels;
  bool closed = true;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_panels() const { return static_cast<int>(panels.size()); }
  Point2 start(int i) const { return nodes[panels[i].a]; }
  Point2 end(int i) const { return nodes[panels[i].b]; }
};

/// Boundary loop of a mesh; node k is boundary node k of the mesh.
BoundaryCurve boundary_curve(const Mesh2D& mesh);
/// Polyline through the given points (closed adds the panel back to the start).
BoundaryCurve polyline_curve(std::span<const Point2> points, bool closed);

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Closed-form panel integrals. The panel runs from pa to pb.
namespace panel {
/// phi(x) = x^2 (ln|x| - 3/2) / 2, the second antiderivative of ln|x|.
double log_antiderivative2(double x);
/// int_a^b int_c^d ln|x - y| dy dx for collinear intervals.
double collinear_log_integral(double a, double b, double c, double d);
/// int_panel ln|x - y| ds_y.
double log_integral(const Point2& x, const Point2& pa, const Point2& pb);
/// int_panel (x - y).n_y / |x - y|^2 phi(y) ds_y for the two hat functions
/// (start, end) of the panel.
std::array<double, 2> dipole_hat_integrals(const Point2& x, const Point2& pa, const Point2& pb);
}  // namespace panel

struct BemOptions {
  int gauss_order = 16;
};

/// Dense Galerkin matrices of the boundary integral operators.
struct BoundaryOperatorSet {
  BoundaryCurve curve;
  Mat V;  // panels x panels
  Mat K;  // panels x nodes
  Mat W;  // nodes x nodes
  Mat M;  // panels x nodes, the duality pairing
  Mat D;  // panels x nodes, arc-length derivative of P1 functions
};

Mat assemble_V(const BoundaryCurve& curve, const BemOptions& opt = {}, Execution exec = Execution::parallel);
Mat assemble_K(const BoundaryCurve& curve, const BemOptions& opt = {}, Execution exec = Execution::parallel);
Mat tangential_derivative(const BoundaryCurve& curve);
Mat duality_mass(const BoundaryCurve& curve);
/// W = D^T V D.
Mat assemble_W(const BoundaryCurve& curve, const Mat& V);

BoundaryOperatorSet assemble_operators(const BoundaryCurve& curve, const BemOptions& opt = {},
                                       Execution exec = Execution::parallel);

namespace reference {
Mat assemble_V(const BoundaryCurve& curve, const BemOptions& opt = {});
Mat assemble_K(const BoundaryCurve& curve, const BemOptions& opt = {});
}  // namespace reference

class BemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete Poincare-Steklov operator S_h = W + (M/2 - K)^T V^-1 (M/2 - K).
struct SteklovOperator {
  BoundaryOperatorSet ops;
  Eigen::LLT<Mat> V_factor;
  Mat C;  // M/2 - K
  Mat S;

  int size() const { return static_cast<int>(S.rows()); }
  /// Exterior normal derivative psi of the decaying harmonic field with
  /// boundary trace g: V psi = (K - M/2) g.
  Vec neumann_datum(const Vec& g) const;
};

SteklovOperator build_steklov(BoundaryOperatorSet ops);
SteklovOperator build_steklov(const Mesh2D& mesh, const BemOptions& opt = {}, Execution exec = Execution::parallel);

/// Smallest lambda with A x = lambda B x, A symmetric, B SPD.
double min_generalized_eigenvalue(const Mat& A, const Mat& B);

/// u2(x) = K_pot g - V_pot psi + a at points outside the curve. Throws
/// BemError if a point is closer to a panel than that panel's length.
Vec reconstruct_exterior(const BoundaryCurve& curve, const Vec& g, const Vec& psi,
                         std::span<const Point2> points, double a = 0.0);

/// Flat little-endian dump: 8-byte magic "bemopsv1", uint32 rows, uint32
/// cols, then rows*cols f64 in row-major order.
void write_bemops(std::ostream& out, const Mat& A);
Mat read_bemops(std::istream& in);

}  // namespace hvi
