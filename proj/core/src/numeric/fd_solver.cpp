#include "kolmo/numeric/fd_solver.hpp"

#include "kolmo/numeric/residual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace kolmo::numeric {

double stable_dt(double hx, double hy, double max_f1, double safety) {
  double dt = hx * hx / 2.0;
  if (max_f1 > 0.0) dt = std::min(dt, hy / max_f1);
  return safety * dt;
}

namespace {

void check_config(const SolverConfig& c) {
  if (c.nx < 3 || c.ny < 3) throw std::invalid_argument("fd_solve: need at least 3 nodes per direction");
  if (!(c.x1 > c.x0) || !(c.y1 > c.y0)) throw std::invalid_argument("fd_solve: empty domain");
  if (!(c.t_end > 0.0)) throw std::invalid_argument("fd_solve: t_end must be positive");
  if (c.snapshots < 2) throw std::invalid_argument("fd_solve: snapshots must be at least 2");
  if (c.dt && !(*c.dt > 0.0)) throw std::invalid_argument("fd_solve: dt must be positive");
}

}  // namespace

GridSolution fd_solve(const SolverConfig& cfg, const StepObserver& observer) {
  check_config(cfg);
  const int nx = cfg.nx, ny = cfg.ny;
  const bool periodic = cfg.boundary == Boundary::periodic_y;
  const double hx = (cfg.x1 - cfg.x0) / (nx - 1);
  const double hy = periodic ? (cfg.y1 - cfg.y0) / ny : (cfg.y1 - cfg.y0) / (ny - 1);

  GridSolution sol;
  for (int i = 0; i < nx; ++i) sol.xs.push_back(cfg.x0 + hx * i);
  for (int j = 0; j < ny; ++j) sol.ys.push_back(cfg.y0 + hy * j);

  ScalarFn f1(cfg.pde.f1, {"u"}, cfg.params), f2(cfg.pde.f2, {"u"}, cfg.params);
  ScalarFn u0(cfg.initial, {"t", "x", "y"}, cfg.params);
  ScalarFn ub(cfg.boundary_values, {"t", "x", "y"}, cfg.params);
  auto at3 = [](const ScalarFn& f, double t, double x, double y) {
    std::array<double, 3> v{t, x, y};
    return f(v);
  };

  const auto idx = [ny](int i, int j) { return static_cast<std::size_t>(i) * ny + j; };
  std::vector<double> u(static_cast<std::size_t>(nx) * ny), next(u.size());
  double range = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      double v = at3(u0, 0.0, sol.xs[i], sol.ys[j]);
      if (!std::isfinite(v)) throw SolverError("non-finite initial value", 0, i, j);
      u[idx(i, j)] = v;
      range = std::max(range, std::abs(v));
    }
  }
  // a zero initial field still needs a finite blow-up threshold
  const double limit = 10.0 * std::max(range, 1.0);

  auto max_f1 = [&] {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(f1(v)));
    return m;
  };
  double dt = cfg.dt ? *cfg.dt : stable_dt(hx, hy, max_f1(), cfg.safety);
  long total_steps = static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9));
  if (total_steps > 100000000L) throw std::invalid_argument("fd_solve: step count exceeds 1e8");

  // store slices at (approximately) equally spaced times, exact end included
  std::vector<double> save_at;
  for (int k = 1; k < cfg.snapshots; ++k) save_at.push_back(cfg.t_end * k / (cfg.snapshots - 1));
  std::size_t next_save = 0;
  sol.times.push_back(0.0);
  sol.values.push_back(u);

  const double s = cfg.pde.y_sign;
  double t = 0.0;
  int step = 0;
  while (t < cfg.t_end - 1e-12 * cfg.t_end) {
    if (!cfg.dt && step > 0 && step % cfg.dt_refresh == 0) dt = stable_dt(hx, hy, max_f1(), cfg.safety);
    double h = std::min(dt, cfg.t_end - t);
    if (next_save < save_at.size()) h = std::min(h, save_at[next_save] - t);
    const int ilo = 1, ihi = nx - 1;
    const int jlo = periodic ? 0 : 1, jhi = periodic ? ny : ny - 1;
    for (int i = ilo; i < ihi; ++i) {
      for (int j = jlo; j < jhi; ++j) {
        int jm = j - 1, jp = j + 1;
        if (periodic) {
          jm = (jm + ny) % ny;
          jp = jp % ny;
        }
        double c = u[idx(i, j)];
        double uxx = (u[idx(i + 1, j)] - 2.0 * c + u[idx(i - 1, j)]) / (hx * hx);
        double a = s * f1(c);
        double uy = a > 0.0 ? (c - u[idx(i, jm)]) / hy : (u[idx(i, jp)] - c) / hy;
        next[idx(i, j)] = c + h * (uxx - a * uy + f2(c));
      }
    }
    double tn = t + h;
    for (int j = 0; j < ny; ++j) {
      next[idx(0, j)] = at3(ub, tn, sol.xs[0], sol.ys[j]);
      next[idx(nx - 1, j)] = at3(ub, tn, sol.xs[nx - 1], sol.ys[j]);
    }
    if (!periodic) {
      for (int i = 1; i < nx - 1; ++i) {
        next[idx(i, 0)] = at3(ub, tn, sol.xs[i], sol.ys[0]);
        next[idx(i, ny - 1)] = at3(ub, tn, sol.xs[i], sol.ys[ny - 1]);
      }
    }
    ++step;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        double v = next[idx(i, j)];
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os << "non-finite value at step " << step << ", node (" << i << ", " << j << ")";
          throw SolverError(os.str(), step, i, j);
        }
        if (std::abs(v) > limit) {
          std::ostringstream os;
          os << "instability at step " << step << ": |u| = " << std::abs(v) << " exceeds " << limit << " at node ("
             << i << ", " << j << ")";
          throw SolverError(os.str(), step, i, j);
        }
      }
    }
    u.swap(next);
    t = tn;
    if (observer) observer(step, t, u);
    if (next_save < save_at.size() && t >= save_at[next_save] - 1e-12 * cfg.t_end) {
      sol.times.push_back(save_at[next_save]);
      sol.values.push_back(u);
      ++next_save;
    }
  }
  sol.steps = step;
  return sol;
}

double linf_error(const GridSolution& sol, std::size_t k, const Expr& exact,
                  const std::map<std::string, double>& params) {
  ScalarFn f(exact, {"t", "x", "y"}, params);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.xs.size(); ++i) {
    for (std::size_t j = 0; j < sol.ys.size(); ++j) {
      std::array<double, 3> v{sol.times[k], sol.xs[i], sol.ys[j]};
      err = std::max(err, std::abs(sol.at(k, i, j) - f(v)));
    }
  }
  return err;
}

}  // namespace kolmo::numeric
