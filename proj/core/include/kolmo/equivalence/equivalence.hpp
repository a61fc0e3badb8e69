#pragma once

#include "kolmo/expr/zero_test.hpp"
#include "kolmo/symmetry/pde.hpp"
#include "kolmo/symmetry/vector_field.hpp"

#include <array>
#include <optional>
#include <string>

namespace kolmo {

/// Parameters a1..a8 of the continuous equivalence group (a[0] is a1).
struct GEquivParams {
  std::array<Expr, 8> a;

  static GEquivParams identity();
  const Expr& operator()(int i) const { return a[static_cast<std::size_t>(i - 1)]; }
};

/// Parameters of "apply p, then q".
[[nodiscard]] GEquivParams compose(const GEquivParams& p, const GEquivParams& q);

/// F1 = (a4 f1 + a5)/a1^2, F2 = a7 f2/a1^2 with u = (u - a8)/a7 inside f1, f2.
/// Throws std::invalid_argument when a1*a4*a7 is literally zero.
[[nodiscard]] PdeInstance apply_gequiv(const PdeInstance& pde, const GEquivParams& p);

/// t -> a1^2 t + a2, x -> a1 x + a3, y -> Y(t, y), u -> theta(t, y) u + nu(t, y).
struct PointTransformation {
  Expr Tbar, Xbar, Ybar, theta, nu;

  /// From the four forward maps; ubar must be affine in u.
  static PointTransformation from_maps(const Expr& tbar, const Expr& xbar, const Expr& ybar, const Expr& ubar);
  static PointTransformation parse(std::string_view t, std::string_view x, std::string_view y, std::string_view u);
  static PointTransformation identity();

  [[nodiscard]] Expr a1_squared() const;  // dTbar/dt
  [[nodiscard]] Expr a1() const;          // dXbar/dx
  [[nodiscard]] Expr ubar() const;
  [[nodiscard]] Bindings forward_bindings() const;  // (t, x, y, u) -> barred expressions
};

/// Throws std::invalid_argument when the maps leave the triangular class.
void validate(const PointTransformation& tr);

struct IdentityCheck {
  std::string name;
  Expr residual;
  ZeroVerdict verdict;
};

struct EquivalenceVerdict {
  bool pass = false;
  IdentityCheck first;   // Y_t + Y_y f1 - a1^2 F1(ubar)
  IdentityCheck second;  // theta_t u + nu_t + (theta_y u + nu_y) f1 + theta f2 - a1^2 F2(ubar)
  std::string domain_error;  // set when Y_y or theta vanishes at a sample point
};

[[nodiscard]] EquivalenceVerdict verify_equivalence(const PdeInstance& source, const PointTransformation& tr,
                                                    const PdeInstance& target, const ZeroTestConfig& config = {});

/// Pulls a symmetry of the target equation back to source coordinates.
[[nodiscard]] VectorField pull_back(const VectorField& target_field, const PointTransformation& tr);

}  // namespace kolmo
