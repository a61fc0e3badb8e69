#pragma once

#include "kolmo/expr/parse.hpp"
#include "kolmo/numeric/fd_solver.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace kolmo::oracle {

// phi_t = phi_zz + phi*phi_z on [-L, L] with zero ends, explicit Euler and
// central differences throughout. Returns phi at the nodes z_k = -L + k*dz.
struct Burgers1D {
  double L = 20.0;
  double dz = 0.01;

  [[nodiscard]] std::vector<double> solve(const std::function<double(double)>& g, double t_end) const {
    const int n = static_cast<int>(std::lround(2 * L / dz)) + 1;
    std::vector<double> phi(n), next(n);
    for (int k = 0; k < n; ++k) phi[k] = g(z(k));
    double vmax = 0;
    for (double v : phi) vmax = std::max(vmax, std::abs(v));
    double dt = 0.4 * dz * dz;
    if (vmax > 0) dt = std::min(dt, 0.4 * dz / vmax);
    const int steps = static_cast<int>(std::ceil(t_end / dt));
    dt = t_end / steps;
    for (int s = 0; s < steps; ++s) {
      next.front() = phi.front();
      next.back() = phi.back();
      for (int k = 1; k + 1 < n; ++k) {
        double zz = (phi[k + 1] - 2 * phi[k] + phi[k - 1]) / (dz * dz);
        double zc = (phi[k + 1] - phi[k - 1]) / (2 * dz);
        next[k] = phi[k] + dt * (zz + phi[k] * zc);
      }
      phi.swap(next);
    }
    return phi;
  }
  [[nodiscard]] double z(int k) const { return -L + k * dz; }
};

// u = (x + y)/(1 - t) for u_t - u_xx - u*u_y = 0 on the unit square
inline numeric::SolverConfig front_config(int n, double t_end = 0.5, int snapshots = 2) {
  numeric::SolverConfig c;
  c.pde = PdeInstance::make("u", "0", -1);
  c.t_end = t_end;
  c.nx = c.ny = n;
  c.initial = parse("x + y");
  c.boundary_values = parse("(x + y)/(1 - t)");
  c.snapshots = snapshots;
  return c;
}

inline Expr front_exact() { return parse("(x + y)/(1 - t)"); }

}  // namespace kolmo::oracle
