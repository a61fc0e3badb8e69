#pragma once

#include "kolmo/expr/expr.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

/// Exponent values tried for m, n and similar symbolic exponents.
[[nodiscard]] const std::vector<Rational>& exponent_samples();

/// One parameter-domain statement, e.g. "eps1 in {-1, 1}", "m in exponents",
/// "C real", "n != m + 1", "beta > 0", "teps2 == 0".
struct Constraint {
  enum class Kind { member, real, relation };
  enum class Rel { eq, ne, lt, le, gt, ge };

  Kind kind = Kind::real;
  std::string text;
  std::string symbol;             // member / real
  std::vector<Rational> values;   // member
  Rel rel = Rel::ne;              // relation
  Expr lhs;
  Expr rhs;

  [[nodiscard]] std::set<std::string> symbols() const;
  /// Relation check at a numeric point; member/real always hold here.
  [[nodiscard]] bool holds(const std::map<std::string, double>& point, double tolerance = 1e-9) const;
  /// Exact check when every symbol is bound to a rational; nullopt if something is unbound.
  [[nodiscard]] std::optional<bool> holds_exact(const std::map<std::string, Rational>& point) const;
  /// For "name == constant": the fixed parameter value.
  [[nodiscard]] std::optional<std::pair<std::string, Rational>> fixed_value() const;
};

/// Throws ParseError on malformed text.
[[nodiscard]] Constraint parse_constraint(std::string_view text);

}  // namespace kolmo
