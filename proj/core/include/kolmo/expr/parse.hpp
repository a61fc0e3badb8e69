#pragma once

#include "kolmo/expr/expr.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kolmo {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  bool allow_basis = false;  // accept Dt, Dx, Dy, Du
};

/// Grammar: numbers, identifiers, + - * / ^, unary -, parentheses, calls.
/// ^ binds tighter than unary minus and is right-associative.
[[nodiscard]] Expr parse(std::string_view text, const ParseOptions& options = {});

}  // namespace kolmo
