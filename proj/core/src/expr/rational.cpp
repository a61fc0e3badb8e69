#include "kolmo/expr/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kolmo {

bool is_integer(const Rational& r) { return denominator(r) == 1; }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  auto parse_digits = [](std::string_view digits) -> std::optional<BigInt> {
    if (digits.empty()) return std::nullopt;
    BigInt value = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      value = value * 10 + (c - '0');
    }
    return value;
  };

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_digits(text.substr(0, slash));
    auto den = parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    result = Rational(*num, *den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole_text = text.substr(0, dot);
    auto frac_text = text.substr(dot + 1);
    if (whole_text.empty() && frac_text.empty()) return std::nullopt;
    BigInt whole = 0;
    if (!whole_text.empty()) {
      auto w = parse_digits(whole_text);
      if (!w) return std::nullopt;
      whole = *w;
    }
    BigInt frac = 0;
    BigInt scale = 1;
    if (!frac_text.empty()) {
      auto f = parse_digits(frac_text);
      if (!f) return std::nullopt;
      frac = *f;
      for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    }
    result = Rational(whole * scale + frac, scale);
  } else {
    auto num = parse_digits(text);
    if (!num) return std::nullopt;
    result = Rational(*num);
  }
  return negative ? Rational(-result) : result;
}

Rational rational_pow(const Rational& r, long k) {
  if (k < 0) {
    if (r == 0) throw std::domain_error("rational_pow: zero to a negative power");
    return rational_pow(Rational(1) / r, -k);
  }
  Rational result = 1;
  Rational base = r;
  auto e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

namespace {

std::optional<BigInt> integer_root(const BigInt& n, unsigned q) {
  if (n < 0) return std::nullopt;
  if (n < 2 || q == 1) return n;
  // Newton iteration on integers, starting above the root.
  BigInt x = BigInt(1) << (static_cast<unsigned>(msb(n)) / q + 1);
  while (true) {
    BigInt xq1 = pow(x, q - 1);
    BigInt y = ((q - 1) * x + n / xq1) / q;
    if (y >= x) break;
    x = y;
  }
  if (pow(x, q) == n) return x;
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& r, unsigned q) {
  if (q == 0 || r < 0) return std::nullopt;
  auto num = integer_root(numerator(r), q);
  auto den = integer_root(denominator(r), q);
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

}  // namespace kolmo
