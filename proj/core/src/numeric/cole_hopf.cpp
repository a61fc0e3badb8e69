#include "kolmo/numeric/cole_hopf.hpp"

#include "kolmo/expr/render.hpp"
#include "kolmo/numeric/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kolmo::numeric {

ColeHopf::ColeHopf(std::function<double(double)> g, ColeHopfOptions options)
    : g_(std::move(g)), options_(options) {
  if (!(options_.anchor_spacing > 0.0)) throw std::invalid_argument("cole_hopf: anchor spacing must be positive");
}

namespace {

std::function<double(double)> scalar_of(const Expr& g, const std::map<std::string, double>& params) {
  std::vector<std::string> free;
  for (const auto& s : free_symbols(g)) {
    if (!params.contains(s)) free.push_back(s);
  }
  if (free.size() > 1) throw std::invalid_argument("cole_hopf: g must depend on one variable, got " + render(g));
  if (free.empty()) free.push_back("z");
  ScalarFn fn(g, free, params);
  return [fn](double z) { return fn(z); };
}

}  // namespace

ColeHopf::ColeHopf(const Expr& g, const std::map<std::string, double>& params, ColeHopfOptions options)
    : ColeHopf(scalar_of(g, params), options) {}

double ColeHopf::antiderivative(double xi) const {
  // int_0^xi = int_0^anchor (cached, built outward) + int_anchor^xi
  const double s = options_.anchor_spacing;
  long k = std::lround(xi / s);
  auto cached = [&](long m) {
    if (auto it = anchors_.find(m); it != anchors_.end()) return it->second;
    double acc = 0.0;
    long step = m > 0 ? 1 : -1;
    long from = 0;
    // resume from the closest cached anchor on the way to m
    for (long j = m - step; j != 0; j -= step) {
      if (auto it = anchors_.find(j); it != anchors_.end()) {
        from = j;
        acc = it->second;
        break;
      }
    }
    for (long j = from; j != m; j += step) {
      acc += integrate(g_, j * s, (j + step) * s, options_.quad).value;
      anchors_[j + step] = acc;
    }
    return acc;
  };
  double base = k == 0 ? 0.0 : cached(k);
  return base + integrate(g_, k * s, xi, options_.quad).value;
}

double ColeHopf::operator()(double t, double z) const {
  if (!(t > 0.0)) throw std::invalid_argument("cole_hopf: t must be positive");
  // the integrand peaks where |xi - z| = t*|g(xi)|; widen the Gaussian window by that drift
  const double r0 = 10.0 * std::sqrt(4.0 * t);
  double gmax = 0.0;
  const int scan = 400;
  for (int k = 0; k <= scan; ++k) {
    double xi = z - r0 - 10.0 + 2.0 * (r0 + 10.0) * k / scan;
    gmax = std::max(gmax, std::abs(g_(xi)));
  }
  const double w = r0 + 1.5 * t * gmax;
  const double a = z - w, b = z + w;
  const double sign = options_.printed_sign ? -0.5 : 0.5;
  auto exponent = [&](double xi) { return -(z - xi) * (z - xi) / (4.0 * t) + sign * antiderivative(xi); };

  // exponent offset from a coarse scan keeps the integrands O(1)
  double offset = -INFINITY, peak = z;
  for (int k = 0; k <= scan; ++k) {
    double xi = a + (b - a) * k / scan;
    double e = exponent(xi);
    if (e > offset) {
      offset = e;
      peak = xi;
    }
  }
  if (!std::isfinite(offset)) throw std::domain_error("cole_hopf: non-finite exponent in window");

  auto kernel = [&](double xi) { return std::exp(exponent(xi) - offset); };
  auto moment = [&](double xi) { return (xi - z) / (2.0 * t) * kernel(xi); };
  // split at the peak so narrow kernels are not stepped over
  QuadratureResult g0 = integrate(kernel, a, peak, options_.quad);
  QuadratureResult g1 = integrate(moment, a, peak, options_.quad);
  g0.value += integrate(kernel, peak, b, options_.quad).value;
  g1.value += integrate(moment, peak, b, options_.quad).value;
  if (g0.value < 1e-300) throw std::domain_error("cole_hopf: G underflow");
  // the (4 pi t)^(-1/2) prefactor and the offset cancel in the ratio
  return 2.0 * g1.value / g0.value;
}

double cole_hopf(const Expr& g, double t, double z, const ColeHopfOptions& options) {
  return ColeHopf(g, {}, options)(t, z);
}

}  // namespace kolmo::numeric
