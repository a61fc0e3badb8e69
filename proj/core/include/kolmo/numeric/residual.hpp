#pragma once

#include "kolmo/expr/expr.hpp"
#include "kolmo/symmetry/pde.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo::numeric {

/// Node grid; residual is taken at interior nodes only.
struct GridSpec {
  double t0 = 0.0, t1 = 1.0;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  int nt = 11, nx = 11, ny = 11;
  double step = 1e-3;
};

using Field = std::function<double(double t, double x, double y)>;

struct ResidualResult {
  double max_abs = 0.0;
  double t = 0.0, x = 0.0, y = 0.0;  // where the max sits
};

class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& msg, double t, double x, double y)
      : std::runtime_error(msg), t(t), x(x), y(y) {}
  double t, x, y;
};

/// max |u_t - u_xx + s f1 u_y - f2| with 4th-order central stencils.
[[nodiscard]] ResidualResult numeric_residual(const Field& u, const PdeInstance& pde, const GridSpec& grid,
                                              const std::map<std::string, double>& params = {});
[[nodiscard]] ResidualResult numeric_residual(const Expr& u, const PdeInstance& pde, const GridSpec& grid,
                                              const std::map<std::string, double>& params = {});

/// Evaluates a scalar expression of one or more named symbols; parameters bound up front.
class ScalarFn {
 public:
  ScalarFn(const Expr& e, const std::vector<std::string>& args, const std::map<std::string, double>& params);
  /// Throws std::domain_error when evaluation fails.
  double operator()(std::span<const double> args) const;
  double operator()(double a) const { return (*this)(std::span<const double>(&a, 1)); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace kolmo::numeric
