#pragma once

#include "kolmo/expr/expr.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

/// Partial derivative; opaque applications go through the chain rule.
[[nodiscard]] Expr differentiate(const Expr& e, std::string_view symbol);
[[nodiscard]] Expr differentiate(const Expr& e, std::string_view symbol, int times);

/// lambda(params).body used to bind an opaque function name.
struct Lambda {
  std::vector<std::string> params;
  Expr body;
};

struct Bindings {
  std::map<std::string, Expr> symbols;
  std::map<std::string, Lambda> functions;

  Bindings& bind(std::string name, Expr value) {
    symbols[std::move(name)] = std::move(value);
    return *this;
  }
  Bindings& bind_function(std::string name, Lambda lambda) {
    functions[std::move(name)] = std::move(lambda);
    return *this;
  }
};

class CyclicBindingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simultaneous substitution. A binding may mention its own symbol (u -> (u - nu)/theta);
/// longer cycles such as {a -> b, b -> a} are rejected.
[[nodiscard]] Expr substitute(const Expr& e, const Bindings& bindings);
[[nodiscard]] Expr substitute(const Expr& e, std::string_view symbol, const Expr& value);

/// Distributes products over sums and multiplies out positive integer powers of sums.
[[nodiscard]] Expr expand(const Expr& e);

/// Top-level terms of e (a single term when e is not a sum).
[[nodiscard]] std::vector<Expr> terms_of(const Expr& e);

/// Groups the terms of expand(e) by the product of factors for which is_key holds.
/// Returns key-monomial -> coefficient. The monomial 1 collects key-free terms.
template <typename Pred>
[[nodiscard]] std::vector<std::pair<Expr, Expr>> collect(const Expr& e, Pred is_key);

/// collect() by symbols of the given names (monomials in those symbols).
[[nodiscard]] std::vector<std::pair<Expr, Expr>> collect_symbols(const Expr& e,
                                                                 const std::vector<std::string>& names);

/// Polynomial coefficients of e in symbol s, index = power. Throws if e is not polynomial in s.
[[nodiscard]] std::vector<Expr> polynomial_coefficients(const Expr& e, std::string_view s);

namespace detail {
std::vector<std::pair<Expr, Expr>> collect_impl(const Expr& e, const std::function<bool(const Expr&)>& is_key);
}

template <typename Pred>
std::vector<std::pair<Expr, Expr>> collect(const Expr& e, Pred is_key) {
  return detail::collect_impl(e, std::function<bool(const Expr&)>(is_key));
}

}  // namespace kolmo
