#pragma once

#include "kolmo/symmetry/vector_field.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves A*x = b exactly; nullopt when inconsistent. Free unknowns are set to 0.
[[nodiscard]] std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b);
[[nodiscard]] std::size_t rank_exact(RationalMatrix a);

struct NamedBasis {
  std::vector<std::string> names;
  std::vector<VectorField> fields;
};

class NotInSpanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Constant coordinates of X in the basis, found by sampling the coefficients at exact
/// rational points. Throws NotInSpanError if no constant combination matches.
[[nodiscard]] std::vector<Rational> coordinates(const VectorField& X, const std::vector<VectorField>& basis);

/// "X1 + 2*X3", "0" for the zero vector.
[[nodiscard]] std::string format_combination(const std::vector<Rational>& coords, const std::vector<std::string>& names);

struct SubalgebraVerdict {
  bool closed = false;
  std::size_t dimension = 0;  // rank of the generators
  /// structure[i][j] = coordinates of [g_i, g_j] in the generators (closed only).
  std::vector<std::vector<std::vector<Rational>>> structure;
  std::size_t offending_i = 0, offending_j = 0;
  std::vector<Rational> defect;  // ambient coordinates of the offending commutator
};

[[nodiscard]] SubalgebraVerdict is_subalgebra(const std::vector<VectorField>& gens, const NamedBasis& ambient);

}  // namespace kolmo
