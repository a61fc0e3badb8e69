#include "kolmo/numeric/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <sstream>

namespace kolmo::numeric {

namespace {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel panel(const std::function<double(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  // depth 0: one G7/K15 pair, no internal refinement
  double v = GK::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config) {
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate: infinite limits");
  std::priority_queue<Panel> q;
  Panel first = panel(f, a, b);
  double total = first.value, err = first.error;
  q.push(first);
  int n = 1;
  if (!std::isfinite(total)) throw QuadratureError("quadrature: non-finite integrand");
  // NaN error estimates keep refining until the interval cap
  while (!(err <= config.abs_tol)) {
    if (n >= config.max_intervals) {
      std::ostringstream os;
      os << "quadrature did not converge on [" << a << ", " << b << "]: error " << err << " after " << n
         << " intervals";
      throw QuadratureError(os.str());
    }
    Panel worst = q.top();
    q.pop();
    double m = 0.5 * (worst.a + worst.b);
    Panel l = panel(f, worst.a, m), r = panel(f, m, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    q.push(l);
    q.push(r);
    ++n;
    if (!std::isfinite(total)) throw QuadratureError("quadrature: non-finite integrand");
  }
  // re-sum to drop accumulated cancellation
  double sum = 0.0, esum = 0.0;
  while (!q.empty()) {
    sum += q.top().value;
    esum += q.top().error;
    q.pop();
  }
  return {sum, esum, n};
}

}  // namespace kolmo::numeric
