#pragma once

#include <functional>
#include <stdexcept>

namespace kolmo::numeric {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_intervals = 4000;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod with bisection until the summed
/// error estimate is below abs_tol. Throws QuadratureError on non-convergence.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureConfig& config = {});

}  // namespace kolmo::numeric
