#pragma once

#include "kolmo/expr/expr.hpp"
#include "kolmo/symmetry/pde.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo::numeric {

enum class Boundary {
  dirichlet,   // all four edges from boundary expression
  periodic_y,  // periodic in y, dirichlet in x
};

struct SolverConfig {
  PdeInstance pde;
  double t_end = 0.5;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  int nx = 64, ny = 64;
  std::optional<double> dt;  // empty = auto
  Expr initial;              // u(0, x, y)
  Boundary boundary = Boundary::dirichlet;
  Expr boundary_values;      // u(t, x, y) on dirichlet edges
  std::map<std::string, double> params;
  int snapshots = 2;         // stored slices, first and last included
  double safety = 0.9;
  int dt_refresh = 50;       // auto dt recomputed every this many steps
};

/// Values row-major [time][x][y].
struct GridSolution {
  std::vector<double> times;
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> values;
  int steps = 0;

  [[nodiscard]] double at(std::size_t k, std::size_t i, std::size_t j) const {
    return values[k][i * ys.size() + j];
  }
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, int step, int i = -1, int j = -1)
      : std::runtime_error(msg), step_(step), i_(i), j_(j) {}
  [[nodiscard]] int step() const { return step_; }
  [[nodiscard]] int i() const { return i_; }
  [[nodiscard]] int j() const { return j_; }

 private:
  int step_, i_, j_;
};

/// Called after every step with the current time and the grid (row-major [x][y]).
using StepObserver = std::function<void(int step, double t, std::span<const double> u)>;

/// Throws std::invalid_argument for a bad config, SolverError on blow-up.
[[nodiscard]] GridSolution fd_solve(const SolverConfig& config, const StepObserver& observer = {});

/// Stable step for the given grid and max |f1|.
[[nodiscard]] double stable_dt(double hx, double hy, double max_f1, double safety);

/// max |u - exact| over all nodes of slice k.
[[nodiscard]] double linf_error(const GridSolution& sol, std::size_t k, const Expr& exact,
                                const std::map<std::string, double>& params = {});

}  // namespace kolmo::numeric
