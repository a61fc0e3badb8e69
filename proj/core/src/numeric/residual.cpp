#include "kolmo/numeric/residual.hpp"

#include "kolmo/expr/evaluate.hpp"
#include "kolmo/expr/render.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace kolmo::numeric {

struct ScalarFn::Impl {
  Program prog;
  std::vector<double> fixed;       // per program variable; NaN marks an argument slot
  std::vector<int> arg_slot;       // per program variable, -1 when fixed
  enum class Kind { general, identity, constant } kind = Kind::general;
  double constant = 0.0;
};

ScalarFn::ScalarFn(const Expr& e, const std::vector<std::string>& args, const std::map<std::string, double>& params) {
  auto impl = std::make_shared<Impl>();
  if (e.kind() == NodeKind::symbol && args.size() == 1 && e.name() == args[0]) {
    impl->kind = Impl::Kind::identity;
  } else {
    impl->prog = Program::compile(e);
    for (const auto& v : impl->prog.variables()) {
      int slot = -1;
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == v) slot = static_cast<int>(k);
      }
      impl->arg_slot.push_back(slot);
      if (slot >= 0) {
        impl->fixed.push_back(0.0);
      } else if (auto it = params.find(v); it != params.end()) {
        impl->fixed.push_back(it->second);
      } else {
        throw std::invalid_argument("unbound symbol '" + v + "' in " + render(e));
      }
    }
    if (impl->prog.uses_opaque()) throw std::invalid_argument("opaque function in numeric expression " + render(e));
    if (impl->prog.variables().empty()) {
      double out = 0.0;
      if (impl->prog.run({}, std::span<double>(&out, 1), {}) != EvalStatus::ok) {
        throw std::domain_error("cannot evaluate " + render(e));
      }
      impl->kind = Impl::Kind::constant;
      impl->constant = out;
    }
  }
  impl_ = std::move(impl);
}

double ScalarFn::operator()(std::span<const double> args) const {
  const Impl& m = *impl_;
  if (m.kind == Impl::Kind::identity) return args[0];
  if (m.kind == Impl::Kind::constant) return m.constant;
  std::array<double, 32> buf{};
  std::vector<double> big;
  std::span<double> vals;
  if (m.fixed.size() <= buf.size()) {
    vals = std::span<double>(buf.data(), m.fixed.size());
  } else {
    big.resize(m.fixed.size());
    vals = big;
  }
  for (std::size_t k = 0; k < m.fixed.size(); ++k) {
    vals[k] = m.arg_slot[k] >= 0 ? args[static_cast<std::size_t>(m.arg_slot[k])] : m.fixed[k];
  }
  double out = 0.0;
  std::string detail;
  if (m.prog.run(vals, std::span<double>(&out, 1), {}, &detail) != EvalStatus::ok) throw std::domain_error(detail);
  return out;
}

namespace {

double d1(double m2, double m1, double p1, double p2, double h) { return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h); }

double d2(double m2, double m1, double c, double p1, double p2, double h) {
  return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
}

double node(double a, double b, int n, int k) { return n <= 1 ? a : a + (b - a) * k / (n - 1); }

}  // namespace

ResidualResult numeric_residual(const Field& u, const PdeInstance& pde, const GridSpec& grid,
                                const std::map<std::string, double>& params) {
  if (grid.step <= 0.0) throw std::invalid_argument("numeric_residual: step must be positive");
  ScalarFn f1(pde.f1, {"u"}, params), f2(pde.f2, {"u"}, params);
  const double h = grid.step;
  ResidualResult best;
  auto interior = [](int n) { return n >= 3 ? std::pair{1, n - 1} : std::pair{0, n}; };
  auto [ta, tb] = interior(grid.nt);
  auto [xa, xb] = interior(grid.nx);
  auto [ya, yb] = interior(grid.ny);
  for (int a = ta; a < tb; ++a) {
    double t = node(grid.t0, grid.t1, grid.nt, a);
    for (int b = xa; b < xb; ++b) {
      double x = node(grid.x0, grid.x1, grid.nx, b);
      for (int c = ya; c < yb; ++c) {
        double y = node(grid.y0, grid.y1, grid.ny, c);
        double r = 0.0;
        try {
          double u0 = u(t, x, y);
          double ut = d1(u(t - 2 * h, x, y), u(t - h, x, y), u(t + h, x, y), u(t + 2 * h, x, y), h);
          double uxx = d2(u(t, x - 2 * h, y), u(t, x - h, y), u0, u(t, x + h, y), u(t, x + 2 * h, y), h);
          double uy = d1(u(t, x, y - 2 * h), u(t, x, y - h), u(t, x, y + h), u(t, x, y + 2 * h), h);
          r = ut - uxx + pde.y_sign * f1(u0) * uy - f2(u0);
        } catch (const std::exception& e) {
          std::ostringstream os;
          os << "domain violation at (t, x, y) = (" << t << ", " << x << ", " << y << "): " << e.what();
          throw DomainError(os.str(), t, x, y);
        }
        if (!std::isfinite(r)) {
          std::ostringstream os;
          os << "non-finite residual at (t, x, y) = (" << t << ", " << x << ", " << y << ")";
          throw DomainError(os.str(), t, x, y);
        }
        if (std::abs(r) > best.max_abs) best = {std::abs(r), t, x, y};
      }
    }
  }
  return best;
}

ResidualResult numeric_residual(const Expr& u, const PdeInstance& pde, const GridSpec& grid,
                                const std::map<std::string, double>& params) {
  ScalarFn fn(u, {"t", "x", "y"}, params);
  return numeric_residual(
      [&](double t, double x, double y) {
        std::array<double, 3> v{t, x, y};
        return fn(v);
      },
      pde, grid, params);
}

}  // namespace kolmo::numeric
