#include "kolmo/expr/constraint.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/evaluate.hpp"
#include "kolmo/expr/parse.hpp"

#include <cmath>
#include <optional>

namespace kolmo {

const std::vector<Rational>& exponent_samples() {
  static const std::vector<Rational> kValues = {Rational(-1), Rational(1, 2), Rational(3, 2),
                                                Rational(2),  Rational(3),    Rational(5, 2)};
  return kValues;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool compare_rel(Constraint::Rel rel, double a, double b, double tol) {
  switch (rel) {
    case Constraint::Rel::eq: return std::abs(a - b) <= tol;
    case Constraint::Rel::ne: return std::abs(a - b) > tol;
    case Constraint::Rel::lt: return a < b - tol;
    case Constraint::Rel::le: return a <= b + tol;
    case Constraint::Rel::gt: return a > b + tol;
    case Constraint::Rel::ge: return a >= b - tol;
  }
  return false;
}

}  // namespace

std::set<std::string> Constraint::symbols() const {
  if (kind != Kind::relation) return {symbol};
  auto s = free_symbols(lhs);
  auto r = free_symbols(rhs);
  s.insert(r.begin(), r.end());
  return s;
}

bool Constraint::holds(const std::map<std::string, double>& point, double tolerance) const {
  if (kind == Kind::member) {
    auto it = point.find(symbol);
    if (it == point.end()) return true;
    for (const auto& v : values) {
      if (std::abs(to_double(v) - it->second) <= tolerance) return true;
    }
    return false;
  }
  if (kind != Kind::relation) return true;
  try {
    return compare_rel(rel, evaluate(lhs, point), evaluate(rhs, point), tolerance);
  } catch (const EvalError&) {
    return false;
  }
}

std::optional<bool> Constraint::holds_exact(const std::map<std::string, Rational>& point) const {
  if (kind == Kind::real) return true;
  if (kind == Kind::member) {
    auto it = point.find(symbol);
    if (it == point.end()) return std::nullopt;
    return std::find(values.begin(), values.end(), it->second) != values.end();
  }
  Bindings b;
  for (const auto& [name, v] : point) b.bind(name, Expr(v));
  Expr diff = substitute(lhs - rhs, b);
  if (!diff.is_number()) return std::nullopt;
  const Rational& d = diff.value();
  switch (rel) {
    case Rel::eq: return d == 0;
    case Rel::ne: return d != 0;
    case Rel::lt: return d < 0;
    case Rel::le: return d <= 0;
    case Rel::gt: return d > 0;
    case Rel::ge: return d >= 0;
  }
  return std::nullopt;
}

std::optional<std::pair<std::string, Rational>> Constraint::fixed_value() const {
  if (kind == Kind::relation && rel == Rel::eq && lhs.is_symbol() && rhs.is_number())
    return std::make_pair(lhs.name(), rhs.value());
  return std::nullopt;
}

Constraint parse_constraint(std::string_view raw) {
  Constraint c;
  c.text = trim(raw);
  const std::string& text = c.text;

  if (auto at = text.find(" in "); at != std::string::npos) {
    c.kind = Constraint::Kind::member;
    c.symbol = trim(text.substr(0, at));
    (void)resolve_symbol(c.symbol);
    std::string set = trim(text.substr(at + 4));
    if (set == "exponents") {
      c.values = exponent_samples();
      return c;
    }
    if (set.size() < 2 || set.front() != '{' || set.back() != '}')
      throw ParseError("expected '{...}' or 'exponents' in constraint '" + text + "'", at + 4);
    std::string body = set.substr(1, set.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t comma = body.find(',', start);
      std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      Expr v = parse(item);
      if (!v.is_number()) throw ParseError("non-numeric set member in '" + text + "'", at);
      c.values.push_back(v.value());
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return c;
  }
  if (text.size() > 5 && text.substr(text.size() - 5) == " real") {
    c.kind = Constraint::Kind::real;
    c.symbol = trim(text.substr(0, text.size() - 5));
    (void)resolve_symbol(c.symbol);
    return c;
  }
  static const std::pair<const char*, Constraint::Rel> kOps[] = {
      {"==", Constraint::Rel::eq}, {"!=", Constraint::Rel::ne}, {"<=", Constraint::Rel::le},
      {">=", Constraint::Rel::ge}, {"<", Constraint::Rel::lt},  {">", Constraint::Rel::gt}};
  for (const auto& [op, rel] : kOps) {
    if (auto at = text.find(op); at != std::string::npos) {
      c.kind = Constraint::Kind::relation;
      c.rel = rel;
      c.lhs = parse(text.substr(0, at));
      c.rhs = parse(text.substr(at + std::string_view(op).size()));
      return c;
    }
  }
  throw ParseError("unrecognized constraint '" + text + "'", 0);
}

}  // namespace kolmo
