#pragma once

#include "kolmo/expr/zero_test.hpp"
#include "kolmo/symmetry/pde.hpp"
#include "kolmo/symmetry/vector_field.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

struct InvariantVerdict {
  bool pass = false;
  std::vector<ZeroVerdict> per_invariant;  // X(I) for each I, in order
};

/// X(I) = 0 for every I.
[[nodiscard]] InvariantVerdict verify_invariants(const VectorField& X, const std::vector<Expr>& invariants,
                                                 const ZeroTestConfig& config = {});

/// Invariants w1[, w2] in (t, x, y) and an ansatz for u in (t, x, y, phi(w1[, w2])).
struct Ansatz {
  std::vector<Expr> omegas;
  Expr u;
  std::vector<Constraint> constraints;

  static Ansatz parse(const std::vector<std::string>& omegas, std::string_view u,
                      const std::vector<std::string>& constraints = {});
  /// The ansatz with w1, w2 replaced by the invariants.
  [[nodiscard]] Expr in_coordinates() const;
};

/// X(u - A) restricted to u = A; zero when the ansatz surface is invariant.
[[nodiscard]] ZeroVerdict ansatz_invariant(const VectorField& X, const Ansatz& ansatz, const ZeroTestConfig& config = {});

class ReductionError : public std::invalid_argument {
 public:
  ReductionError(const std::string& message, std::map<std::string, double> p1 = {}, std::map<std::string, double> p2 = {})
      : std::invalid_argument(message), first(std::move(p1)), second(std::move(p2)) {}
  std::map<std::string, double> first, second;  // witness pair for a failed factorization
};

struct ReducedEquation {
  Expr reduced;  // in phi-jets, w1, w2 and parameters; leading coefficient 1
  Expr factor;   // the (t, x, y) factor divided out
  Expr raw;      // substituted residual in (t, x, y) and phi-jets
};

/// Substitutes the ansatz into the equation and divides out the (t, x, y) factor.
/// Invariants must be affine in (t, x, y). Throws ReductionError when the
/// residual does not factor through the invariants.
[[nodiscard]] ReducedEquation reduce(const PdeInstance& pde, const Ansatz& ansatz, const ZeroTestConfig& config = {});

struct MatchVerdict {
  bool pass = false;
  Expr lambda;            // got = lambda * expected
  bool constant = false;  // lambda free of w1, w2
  double lambda_value = 0.0;  // lambda at one sample point
  ZeroVerdict verdict;
};

/// got = lambda * expected with lambda != 0 a function of the invariants and
/// parameters only. lambda is the ratio of the coefficients of the highest-order
/// jet monomial of expected.
[[nodiscard]] MatchVerdict match_reduced(const Expr& got, const Expr& expected, const ZeroTestConfig& config = {});

struct SolutionVerdict {
  bool zero = false;
  double max_abs = 0.0;             // over the sampled points
  std::optional<Witness> witness;
  Expr residual;
};

/// phi as a function of the invariants when the ansatz is plain phi(w1[, w2]).
[[nodiscard]] std::optional<Expr> phi_from_solution(const Ansatz& ansatz, const Expr& u);

/// Residual of an explicit u(t, x, y) on the given domain.
[[nodiscard]] SolutionVerdict solution_residual(const PdeInstance& pde, const Expr& u,
                                                const std::vector<Constraint>& domain = {},
                                                const ZeroTestConfig& config = {});

/// The ansatz with phi replaced by a closed form in w1 (and w2).
[[nodiscard]] Expr lift(const Ansatz& ansatz, const Expr& phi);

/// Reduced equation evaluated on a closed-form phi.
[[nodiscard]] Expr reduced_on(const Expr& reduced, const Expr& phi);

}  // namespace kolmo
