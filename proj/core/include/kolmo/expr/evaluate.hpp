#pragma once

#include "kolmo/expr/expr.hpp"

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

enum class EvalStatus { ok, domain, near_singular, non_finite };

/// Value of an opaque function derivative name^(orders)(args).
using OpaqueFn = std::function<double(const std::string& name, const std::vector<int>& orders,
                                      std::span<const double> args)>;

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalStatus status, const std::string& message) : std::runtime_error(message), status_(status) {}
  [[nodiscard]] EvalStatus status() const { return status_; }

 private:
  EvalStatus status_;
};

/// Flattened evaluation program for one or more expressions sharing subtrees.
class Program {
 public:
  struct Options {
    /// |denominator| or |cos| below this reports near_singular (0 = exact zero only).
    double singular_guard = 0.0;
    const OpaqueFn* opaque = nullptr;
  };

  Program() = default;
  static Program compile(const std::vector<Expr>& roots);
  static Program compile(const Expr& root) { return compile(std::vector<Expr>{root}); }

  /// Sorted free-symbol names; run() takes values in this order.
  [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
  [[nodiscard]] std::size_t outputs() const { return roots_.size(); }
  [[nodiscard]] bool uses_opaque() const { return uses_opaque_; }

  EvalStatus run(std::span<const double> values, std::span<double> out, const Options& options,
                 std::string* detail = nullptr) const;

 private:
  enum class Op : std::uint8_t { constant, variable, add, mul, pow_int, pow_rational, pow, func, apply };
  struct Instr {
    Op op;
    Fn fn = Fn::exp;
    int first = 0;   // into args_ (children) or constant / variable slot
    int count = 0;
    double number = 0.0;  // constant value or integer exponent
    long num = 0, den = 1;  // rational exponent
    std::string name;
    std::vector<int> orders;
  };

  std::vector<Instr> code_;
  std::vector<int> args_;
  std::vector<int> roots_;
  std::vector<std::string> variables_;
  bool uses_opaque_ = false;
};

/// Evaluates e at a point; throws EvalError (domain, singular, unbound symbol).
[[nodiscard]] double evaluate(const Expr& e, const std::map<std::string, double>& point,
                              const OpaqueFn* opaque = nullptr);

}  // namespace kolmo
