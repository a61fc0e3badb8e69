#pragma once

#include "kolmo/symmetry/pde.hpp"
#include "kolmo/symmetry/vector_field.hpp"

#include <string>
#include <vector>

namespace kolmo {

class JetOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// D_v e for v in {t, x, y}; throws JetOrderError past the order cap.
[[nodiscard]] Expr total_derivative(const Expr& e, char v);

struct ProlongedField {
  VectorField base;
  Expr eta_t, eta_x, eta_y, eta_xx;
};

[[nodiscard]] ProlongedField prolong(const VectorField& X);

/// Lie criterion evaluated on the solution manifold; only independent jets remain.
[[nodiscard]] Expr invariance_residual(const VectorField& X, const PdeInstance& pde);

struct DeterminingResidual {
  std::string label;
  Expr residual;
};

/// The structural conditions and the four classifying equations, as left-minus-right sides.
[[nodiscard]] std::vector<DeterminingResidual> determining_residuals(const VectorField& X, const PdeInstance& pde);

}  // namespace kolmo
