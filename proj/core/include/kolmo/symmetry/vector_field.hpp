#pragma once

#include "kolmo/expr/expr.hpp"

#include <array>
#include <string>
#include <string_view>

namespace kolmo {

/// xi0*Dt + xi1*Dx + xi2*Dy + eta*Du with coefficients over (t, x, y, u) and parameters.
struct VectorField {
  Expr xi0, xi1, xi2, eta;

  /// Parses "t*Dt + (1/2)*x*Dx - u*Du"; throws ParseError or std::invalid_argument.
  static VectorField parse(std::string_view text);
  static VectorField from(std::array<Expr, 4> c) { return {c[0], c[1], c[2], c[3]}; }

  [[nodiscard]] std::array<Expr, 4> coefficients() const { return {xi0, xi1, xi2, eta}; }
  [[nodiscard]] Expr to_expr() const;
  [[nodiscard]] std::string str() const;
  [[nodiscard]] bool is_zero_field() const;

  /// Action as a first-order derivation on a function of (t, x, y, u).
  [[nodiscard]] Expr apply(const Expr& f) const;
};

/// Throws std::invalid_argument if a coefficient mentions jets, phi or opaque functions.
void validate(const VectorField& X);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& c, const VectorField& a);

[[nodiscard]] VectorField substitute(const VectorField& X, const struct Bindings& b);
[[nodiscard]] VectorField commutator(const VectorField& X, const VectorField& Y);

}  // namespace kolmo
