#pragma once

#include <functional>
#include <string>
#include <vector>

namespace adapt_forge {

struct BfgsOptions {
  double gtol = 1e-8;  // on the max-norm of the gradient
  int max_evaluations = 10000;
};

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> gradient;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Returns f(x) and writes ∇f(x) into `grad` (already sized).
using ObjectiveFn =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

/// Quasi-Newton minimization with a strong-Wolfe line search. The returned
/// point is always the best one evaluated.
BfgsResult bfgs_minimize(const ObjectiveFn& fn, std::vector<double> x0,
                         const BfgsOptions& options = {});

}  // namespace adapt_forge
