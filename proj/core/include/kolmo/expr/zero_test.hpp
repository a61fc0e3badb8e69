#pragma once

#include "kolmo/expr/constraint.hpp"
#include "kolmo/expr/evaluate.hpp"
#include "kolmo/expr/expr.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

/// Portable generator: mt19937_64 with hand-rolled real mapping (stdlib
/// distributions differ between implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Overrides for how individual symbols are drawn.
struct SamplingSpec {
  std::vector<Constraint> constraints;
  std::map<std::string, double> fixed;
  std::map<std::string, std::pair<double, double>> ranges;
  std::map<std::string, std::vector<double>> choices;
  /// Force u into [0.1, 2]; otherwise decided from the expression.
  std::optional<bool> positive_u;
};

struct ZeroTestConfig {
  int points = 50;
  double tau_abs = 1e-9;
  double tau_rel = 1e-9;
  double exclusion = 0.05;       // |v| below this is never sampled
  double singular_guard = 0.05;  // denominators below this trigger a resample
  std::uint64_t seed = 0x6b6f6c6d6fULL;
  SamplingSpec sampling;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Witness {
  std::map<std::string, double> point;
  double value = 0.0;
  double scale = 0.0;
};

struct ZeroVerdict {
  bool zero = false;
  std::optional<Witness> witness;  // first failing point when nonzero
  int samples = 0;
  int attempts = 0;
  double worst_ratio = 0.0;        // max |e| / (tau_abs + tau_rel*M)
  explicit operator bool() const { return zero; }
};

/// Random smooth stand-ins for opaque functions, redrawn per sample point.
class RandomFunctions {
 public:
  void redraw(Rng& rng, const std::vector<std::pair<std::string, int>>& arities);
  double operator()(const std::string& name, const std::vector<int>& orders, std::span<const double> args) const;
  [[nodiscard]] OpaqueFn as_opaque() const;

 private:
  struct Shape {
    std::vector<double> poly;  // coefficients of (l.v)^k
    std::vector<double> l, m, q;
    double a = 0, phase = 0, d = 0;
  };
  std::map<std::string, Shape> shapes_;
};

/// Draws points for a fixed variable list under a SamplingSpec.
class Sampler {
 public:
  Sampler(std::vector<std::string> variables, const SamplingSpec& spec, bool positive_u, double exclusion);
  /// One candidate point (constraints checked separately via admissible()).
  std::vector<double> draw(Rng& rng) const;
  [[nodiscard]] bool admissible(const std::vector<double>& values) const;
  [[nodiscard]] std::map<std::string, double> as_map(const std::vector<double>& values) const;
  [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }

 private:
  std::vector<std::string> variables_;
  const SamplingSpec& spec_;
  bool positive_u_;
  double exclusion_;
};

/// True when e contains ln(..u..) or a non-integer power of an expression in u.
[[nodiscard]] bool needs_positive_u(const Expr& e);

/// Randomized identity test; throws SamplingError when the domain is too thin.
[[nodiscard]] ZeroVerdict is_zero(const Expr& e, const ZeroTestConfig& config = {});

/// Arities of opaque functions applied in e (name, number of args).
[[nodiscard]] std::vector<std::pair<std::string, int>> opaque_arities(const Expr& e);

}  // namespace kolmo
