#pragma once

#include "kolmo/expr/constraint.hpp"
#include "kolmo/expr/expr.hpp"

#include <string>
#include <vector>

namespace kolmo {

/// u_t - u_xx + s*f1(u)*u_y = f2(u), s = y_sign.
struct PdeInstance {
  Expr f1;
  Expr f2;
  std::vector<Constraint> constraints;
  int y_sign = 1;
  std::string label;

  /// f1, f2 left as opaque f1(u), f2(u).
  static PdeInstance opaque(int y_sign = 1);
  /// Parses both bodies; throws std::invalid_argument if f1 is constant in u.
  static PdeInstance make(std::string_view f1, std::string_view f2, int y_sign = 1);

  [[nodiscard]] Expr f1_dot() const;
  [[nodiscard]] Expr f2_dot() const;
  /// Jet form u_t - u_xx + s*f1*u_y - f2.
  [[nodiscard]] Expr jet_form() const;
  /// Right-hand side for u_t on the solution manifold: u_xx - s*f1*u_y + f2.
  [[nodiscard]] Expr u_t_on_manifold() const;
  /// Residual of an explicit u(t, x, y) in the equation.
  [[nodiscard]] Expr residual_of(const Expr& u) const;
};

/// Throws std::invalid_argument for bodies in symbols other than u and parameters.
void validate(const PdeInstance& pde);

}  // namespace kolmo
