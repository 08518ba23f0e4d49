#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace oada {

/// Returns f(x) and writes the gradient into `grad` (same length as x).
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct MinimizeOptions {
  double gtol = 1e-8;  // on the gradient infinity-norm
  int max_iter = 500;
  int max_line_search = 20;
  double c1 = 1e-4;
  double c2 = 0.9;
  /// Extra runs from seeded Gaussian perturbations of the best point.
  int restarts = 0;
  std::uint64_t seed = 0;
  double restart_scale = 0.1;
};

struct OptimizeResult {
  std::vector<double> theta_opt;
  double objective_value = 0.0;
  int n_evaluations = 0;
  int n_iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::string message;
};

/// BFGS with an inverse-Hessian update and a strong-Wolfe line search.
/// Never returns a point worse than theta0. Throws std::domain_error if the
/// objective produces NaN.
OptimizeResult minimize(const Objective& objective, std::vector<double> theta0,
                        const MinimizeOptions& options = {});

}  // namespace oada
