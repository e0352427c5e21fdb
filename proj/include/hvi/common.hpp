#pragma once

#include <Eigen/Dense>

namespace hvi {

using Point2 = Eigen::Vector2d;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Selects the OpenMP kernel or the serial reference loop. Both produce
/// bit-identical results; the serial path is kept for testing.
enum class Execution { parallel, serial };

/// Number of OpenMP threads used by `Execution::parallel` kernels.
void set_thread_count(int n);
int thread_count();

}  // namespace hvi
