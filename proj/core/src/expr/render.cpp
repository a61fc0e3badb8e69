#include "kolmo/expr/render.hpp"

#include "kolmo/expr/expr.hpp"

namespace kolmo {

namespace {

enum Prec { kAdd = 1, kMul = 2, kUnary = 3, kPow = 4, kAtom = 5 };

std::string emit(const Expr& e, int context);

std::string wrap(const std::string& s, int own, int context) {
  return own < context ? "(" + s + ")" : s;
}

std::string apply_name(const Expr& e) {
  const auto& orders = e.orders();
  if (e.name() == "phi") {
    bool any = false;
    for (int o : orders) any = any || o > 0;
    if (!any) return "phi";
    std::string name = "phi_";
    for (std::size_t i = 0; i < orders.size(); ++i) {
      for (int k = 0; k < orders[i]; ++k) name += "w" + std::to_string(i + 1);
    }
    return name;
  }
  return e.name() + std::string(static_cast<std::size_t>(orders.empty() ? 0 : orders[0]), '\'');
}

bool is_negative_exponent(const Expr& factor) {
  return factor.kind() == NodeKind::pow && factor.ops()[1].is_number() && factor.ops()[1].value() < 0;
}

std::string emit_number(const Rational& v, int context) {
  std::string s = to_string(v);
  int own = kAtom;
  if (v < 0) own = kUnary;
  if (!is_integer(v)) own = kMul;
  // A fraction as a power base or exponent needs parentheses; as a factor "1/2*x" reads correctly.
  if (!is_integer(v) && context >= kUnary) return "(" + s + ")";
  return wrap(s, own, context);
}

// Product without sign handling: numerator / denominator.
std::string emit_product(const Rational& magnitude, const std::vector<Expr>& factors) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  if (numerator(magnitude) != 1) num.push_back(numerator(magnitude).str());
  if (denominator(magnitude) != 1) den.push_back(denominator(magnitude).str());
  for (const auto& f : factors) {
    if (is_negative_exponent(f)) {
      den.push_back(emit(Expr::pow(f.ops()[0], Expr(Rational(-f.ops()[1].value()))), kPow));
    } else {
      num.push_back(emit(f, kMul + 1));
    }
  }
  std::string out;
  if (num.empty()) out = "1";
  for (std::size_t i = 0; i < num.size(); ++i) out += (i ? "*" : "") + num[i];
  if (!den.empty()) {
    std::string d;
    for (std::size_t i = 0; i < den.size(); ++i) d += (i ? "*" : "") + den[i];
    out += "/" + (den.size() > 1 ? "(" + d + ")" : d);
  }
  return out;
}

// Returns (negative, text of the magnitude) for a sum term.
std::pair<bool, std::string> emit_signed(const Expr& e) {
  if (e.is_number()) {
    const Rational& v = e.value();
    return {v < 0, to_string(v < 0 ? Rational(-v) : v)};
  }
  if (e.kind() == NodeKind::mul) {
    auto [c, rest] = e.coefficient_split();
    std::vector<Expr> factors = rest.kind() == NodeKind::mul ? rest.ops() : std::vector<Expr>{rest};
    bool neg = c < 0;
    return {neg, emit_product(neg ? Rational(-c) : c, factors)};
  }
  if (is_negative_exponent(e)) return {false, emit_product(Rational(1), {e})};
  return {false, emit(e, kMul)};
}

std::string emit(const Expr& e, int context) {
  switch (e.kind()) {
    case NodeKind::number: return emit_number(e.value(), context);
    case NodeKind::symbol: return e.name();
    case NodeKind::apply: {
      std::string s = apply_name(e) + "(";
      for (std::size_t i = 0; i < e.ops().size(); ++i) s += (i ? ", " : "") + emit(e.ops()[i], 0);
      return s + ")";
    }
    case NodeKind::func: return std::string(fn_name(e.fn())) + "(" + emit(e.ops()[0], 0) + ")";
    case NodeKind::pow: {
      const Expr& base = e.ops()[0];
      const Expr& ex = e.ops()[1];
      if (ex.is_number(Rational(1, 2))) return "sqrt(" + emit(base, 0) + ")";
      if (ex.is_number() && ex.value() < 0) {
        return wrap(emit_product(Rational(1), {e}), kMul, context);
      }
      std::string b = emit(base, kAtom);
      std::string x = (ex.is_number() && ex.value() > 0 && is_integer(ex.value())) || ex.is_symbol()
                          ? emit(ex, kAtom)
                          : "(" + emit(ex, 0) + ")";
      return wrap(b + "^" + x, kPow, context);
    }
    case NodeKind::mul: {
      auto [neg, body] = emit_signed(e);
      if (neg) return wrap("-" + body, kUnary, context);
      return wrap(body, kMul, context);
    }
    case NodeKind::add: {
      std::string out;
      std::vector<Expr> terms = e.ops();
      // Constant last reads better.
      if (!terms.empty() && terms.front().is_number()) std::rotate(terms.begin(), terms.begin() + 1, terms.end());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        auto [neg, body] = emit_signed(terms[i]);
        if (i == 0) out = (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
      }
      return wrap(out, kAdd, context);
    }
  }
  return "?";
}

}  // namespace

std::string render(const Expr& e) { return emit(e, 0); }

}  // namespace kolmo
