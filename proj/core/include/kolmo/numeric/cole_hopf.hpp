#pragma once

#include "kolmo/expr/expr.hpp"
#include "kolmo/numeric/quadrature.hpp"

#include <functional>
#include <map>
#include <string>

namespace kolmo::numeric {

struct ColeHopfOptions {
  QuadratureConfig quad;
  // false: G0 = exp(+1/2 int g), which solves phi_t = phi_zz + phi phi_z.
  // true: exp(-1/2 int g) as printed in the classical formula.
  bool printed_sign = false;
  double anchor_spacing = 0.5;  // cached antiderivative nodes
};

/// phi(t, z) = 2 G_z / G for the Cauchy problem phi(0, z) = g(z).
class ColeHopf {
 public:
  ColeHopf(std::function<double(double)> g, ColeHopfOptions options = {});
  /// g given as an expression in one free symbol (w2, z or anything else).
  ColeHopf(const Expr& g, const std::map<std::string, double>& params = {}, ColeHopfOptions options = {});

  /// Throws std::invalid_argument for t <= 0, QuadratureError otherwise.
  [[nodiscard]] double operator()(double t, double z) const;
  /// int_0^xi g.
  [[nodiscard]] double antiderivative(double xi) const;

 private:
  std::function<double(double)> g_;
  ColeHopfOptions options_;
  mutable std::map<long, double> anchors_;
};

[[nodiscard]] double cole_hopf(const Expr& g, double t, double z, const ColeHopfOptions& options = {});

}  // namespace kolmo::numeric
