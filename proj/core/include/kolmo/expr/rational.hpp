#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace kolmo {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

[[nodiscard]] bool is_integer(const Rational& r);
[[nodiscard]] double to_double(const Rational& r);
[[nodiscard]] std::string to_string(const Rational& r);

/// Parses "12", "-3/4" or a decimal literal "0.125" exactly.
[[nodiscard]] std::optional<Rational> parse_rational(std::string_view text);

/// r^k for integer k; k < 0 requires r != 0.
[[nodiscard]] Rational rational_pow(const Rational& r, long k);

/// Exact q-th root of a non-negative rational, when it exists.
[[nodiscard]] std::optional<Rational> exact_root(const Rational& r, unsigned q);

}  // namespace kolmo
