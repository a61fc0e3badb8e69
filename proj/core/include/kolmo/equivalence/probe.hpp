#pragma once

#include "kolmo/expr/rational.hpp"
#include "kolmo/symmetry/pde.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kolmo {

/// c[0] + c[1]*s + ... with s = a1^2.
struct SPolynomial {
  std::vector<Rational> c;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::string str() const;  // in powers of a1
};

/// a*theta + b*nu + c = 0 for every admissible (t, y).
struct ProbeCondition {
  SPolynomial theta, nu, constant;
  std::string text;
};

struct ProbeCase {
  std::map<std::string, int> signs;  // eps values of this branch
  std::vector<ProbeCondition> conditions;
  bool obstructed = false;           // theta would have to vanish for every real a1
  std::optional<Rational> a1_fourth; // when a condition reads (c0 + c2*a1^4)*theta = 0
  std::vector<double> admissible_a1; // positive real a1 allowed by the conditions
  std::string summary;
};

struct ProbeReport {
  std::vector<std::string> split_system;  // coefficient equations in powers of u
  std::vector<ProbeCase> cases;
  bool obstruction = false;               // every branch obstructed
};

/// Looks for an obstruction to mapping source onto target by a point transformation
/// of the triangular class. Both f1 must agree; the target bodies must be affine in u.
/// eps-parameters are enumerated over {-1, 1}; other parameters must be bound beforehand.
[[nodiscard]] ProbeReport nonequivalence_probe(const PdeInstance& source, const PdeInstance& target);

}  // namespace kolmo
