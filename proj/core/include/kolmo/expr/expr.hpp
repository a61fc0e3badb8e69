#pragma once

#include "kolmo/expr/rational.hpp"
#include "kolmo/expr/symbol.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

enum class NodeKind : std::uint8_t { number, symbol, apply, func, pow, mul, add };

enum class Fn : std::uint8_t { exp, ln, sin, cos, tan, sinh, cosh, abs };

[[nodiscard]] std::string_view fn_name(Fn fn);

struct Node;

/// Immutable, canonicalized expression handle. Cheap to copy.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Expr number(const Rational& value);
  /// Symbol from an identifier; throws SymbolError for invalid names.
  static Expr symbol(std::string_view name, bool allow_basis = false);
  static Expr func(Fn fn, const Expr& arg);
  /// Opaque application name^(orders)(args), e.g. f1''(u) or phi_w1(a, b).
  static Expr apply(std::string_view name, std::vector<int> orders, std::vector<Expr> args);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr pow(const Expr& base, const Expr& exponent);

  [[nodiscard]] NodeKind kind() const;
  [[nodiscard]] const Rational& value() const;  // number only
  [[nodiscard]] const std::string& name() const;  // symbol / apply
  [[nodiscard]] SymbolKind symbol_kind() const;
  [[nodiscard]] Fn fn() const;
  [[nodiscard]] const std::vector<int>& orders() const;
  /// Children: add terms, mul factors (numeric coefficient first when != 1),
  /// pow {base, exponent}, func {arg}, apply args.
  [[nodiscard]] const std::vector<Expr>& ops() const;
  [[nodiscard]] std::uint64_t hash() const;
  /// 64-bit bloom mask of the symbols occurring in the tree.
  [[nodiscard]] std::uint64_t symbol_mask() const;
  [[nodiscard]] const Node* node() const { return node_.get(); }

  [[nodiscard]] bool is_number() const { return kind() == NodeKind::number; }
  [[nodiscard]] bool is_number(const Rational& v) const;
  [[nodiscard]] bool is_zero_literal() const { return is_number(Rational(0)); }
  [[nodiscard]] bool is_symbol() const { return kind() == NodeKind::symbol; }
  [[nodiscard]] bool is_symbol(std::string_view name) const;

  /// Split c*rest; numbers give (value, 1).
  [[nodiscard]] std::pair<Rational, Expr> coefficient_split() const;
  /// Split base^exponent; non-powers give (self, 1).
  [[nodiscard]] std::pair<Expr, Expr> power_split() const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  friend struct ExprFactory;
};

struct Node {
  NodeKind kind = NodeKind::number;
  SymbolKind skind = SymbolKind::parameter;
  Fn fn = Fn::exp;
  std::uint64_t hash = 0;
  std::uint64_t mask = 0;
  Rational value;
  std::string name;
  std::vector<int> orders;
  std::vector<Expr> ops;
};

/// Total structural order used for canonical sorting.
[[nodiscard]] int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
struct ExprHash {
  std::size_t operator()(const Expr& e) const { return static_cast<std::size_t>(e.hash()); }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);
[[nodiscard]] Expr pow(const Expr& base, const Expr& exponent);
[[nodiscard]] Expr sym(std::string_view name);
[[nodiscard]] Expr exp(const Expr& e);
[[nodiscard]] Expr ln(const Expr& e);
[[nodiscard]] Expr sin(const Expr& e);
[[nodiscard]] Expr cos(const Expr& e);
[[nodiscard]] Expr sqrt(const Expr& e);

/// True when the named symbol occurs in e.
[[nodiscard]] bool depends_on(const Expr& e, std::string_view name);
[[nodiscard]] bool contains_kind(const Expr& e, SymbolKind kind);
[[nodiscard]] bool contains_apply(const Expr& e, std::string_view name = {});
[[nodiscard]] std::set<std::string> free_symbols(const Expr& e);
/// Names of opaque functions applied anywhere in e.
[[nodiscard]] std::set<std::string> applied_functions(const Expr& e);
[[nodiscard]] std::size_t tree_size(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace kolmo
