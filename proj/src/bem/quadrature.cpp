#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "hvi/bem.hpp"

namespace hvi {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_rule(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[n - 1 - i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("Gauss order must be in [1, 64], got " + std::to_string(n));
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace hvi
