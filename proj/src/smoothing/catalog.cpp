#include <cmath>
#include <stdexcept>

#include "hvi/smoothing.hpp"

namespace hvi {

SuperpotentialSpec tresca(double g) {
  if (!(g >= 0.0)) throw std::invalid_argument("tresca: friction bound g must be nonnegative");
  SuperpotentialSpec spec;
  spec.name = "tresca";
  spec.branches = {
      {[g](double, double x) { return g * x; }, [g](double, double) { return g; }, [](double, double) { return 0.0; }},
      {[g](double, double x) { return -g * x; }, [g](double, double) { return -g; },
       [](double, double) { return 0.0; }}};
  spec.c = {g, g};
  spec.d = {0.0, 0.0};
  spec.alpha = 0.0;
  return spec;
}

SuperpotentialSpec linear_friction(double q) {
  return linear_friction([q](double) { return q; }, std::abs(q));
}

SuperpotentialSpec linear_friction(std::function<double(double s)> q, double q_max) {
  SuperpotentialSpec spec;
  spec.name = "linear";
  spec.branches = {{[q](double s, double x) { return q(s) * x; }, [q](double s, double) { return q(s); },
                    [](double, double) { return 0.0; }}};
  spec.c = {q_max};
  spec.d = {q_max};
  spec.alpha = 0.0;
  return spec;
}

SuperpotentialSpec nonconvex(double g, double beta) {
  if (!(g >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("nonconvex: g and beta must be nonnegative");
  SuperpotentialSpec spec;
  spec.name = "nonconvex";
  spec.branches = {{[g, beta](double, double x) { return g * x - 0.5 * beta * x * x; },
                    [g, beta](double, double x) { return g - beta * x; }, [beta](double, double) { return -beta; }},
                   {[g, beta](double, double x) { return -g * x - 0.5 * beta * x * x; },
                    [g, beta](double, double x) { return -g - beta * x; }, [beta](double, double) { return -beta; }}};
  spec.c = {std::max(g, beta), std::max(g, beta)};
  spec.alpha = beta;
  return spec;
}

SuperpotentialSpec superpotential_by_name(const std::string& name, std::span<const double> params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("friction '" + name + "' takes " + std::to_string(n) + " parameter(s), got " +
                                  std::to_string(params.size()));
  };
  if (name == "tresca") {
    need(1);
    return tresca(params[0]);
  }
  if (name == "linear") {
    need(1);
    return linear_friction(params[0]);
  }
  if (name == "nonconvex") {
    need(2);
    return nonconvex(params[0], params[1]);
  }
  throw std::invalid_argument("unknown friction '" + name + "' (available: tresca, linear, nonconvex)");
}

}  // namespace hvi
