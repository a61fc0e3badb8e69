#include "kolmo/expr/expr.hpp"

#include "kolmo/expr/render.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kolmo {

std::string_view fn_name(Fn fn) {
  switch (fn) {
    case Fn::exp: return "exp";
    case Fn::ln: return "ln";
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::tan: return "tan";
    case Fn::sinh: return "sinh";
    case Fn::cosh: return "cosh";
    case Fn::abs: return "abs";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv(std::string_view s, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  return h ^ v;
}

std::uint64_t symbol_bit(std::string_view name) { return 1ULL << (fnv(name) & 63U); }

}  // namespace

struct ExprFactory {
  static Expr make(Node node) {
    std::uint64_t h = mix(kFnvOffset, static_cast<std::uint64_t>(node.kind));
    std::uint64_t mask = 0;
    switch (node.kind) {
      case NodeKind::number: h = mix(h, fnv(to_string(node.value))); break;
      case NodeKind::symbol:
        h = mix(h, fnv(node.name));
        mask = symbol_bit(node.name);
        break;
      case NodeKind::apply:
        h = mix(h, fnv(node.name));
        for (int o : node.orders) h = mix(h, static_cast<std::uint64_t>(o) + 17);
        break;
      case NodeKind::func: h = mix(h, static_cast<std::uint64_t>(node.fn) + 101); break;
      default: break;
    }
    for (const auto& op : node.ops) {
      h = mix(h, op.hash());
      mask |= op.symbol_mask();
    }
    node.hash = h;
    node.mask = mask;
    return Expr(std::make_shared<const Node>(std::move(node)));
  }

  static Expr number_node(const Rational& v) {
    Node n;
    n.kind = NodeKind::number;
    n.value = v;
    return make(std::move(n));
  }

  static Expr mul_node(const Rational& coeff, std::vector<Expr> factors) {
    Node n;
    n.kind = NodeKind::mul;
    if (coeff != 1) n.ops.push_back(number_node(coeff));
    for (auto& f : factors) n.ops.push_back(std::move(f));
    return make(std::move(n));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprFactory::number_node(Rational(0));
  return z;
}
const Expr& one_expr() {
  static const Expr o = ExprFactory::number_node(Rational(1));
  return o;
}

int kind_rank(NodeKind k) { return static_cast<int>(k); }

template <typename T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_ops(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  return cmp3(a.size(), b.size());
}

// Base-first ordering for product factors so x and x^2 sit next to each other.
bool factor_less(const Expr& a, const Expr& b) {
  auto [ba, ea] = a.power_split();
  auto [bb, eb] = b.power_split();
  if (int c = compare(ba, bb); c != 0) return c < 0;
  return compare(ea, eb) < 0;
}

// Insertion-ordered map keyed by expression.
template <typename V>
class ExprMap {
 public:
  V& at(const Expr& key, const V& init) {
    auto range = index_.equal_range(key.hash());
    for (auto it = range.first; it != range.second; ++it) {
      if (entries_[it->second].first == key) return entries_[it->second].second;
    }
    index_.emplace(key.hash(), entries_.size());
    entries_.emplace_back(key, init);
    return entries_.back().second;
  }
  std::vector<std::pair<Expr, V>>& entries() { return entries_; }

 private:
  std::vector<std::pair<Expr, V>> entries_;
  std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

Expr make_add(std::vector<Expr> input);
Expr make_mul(std::vector<Expr> input);
Expr make_pow(const Expr& base, const Expr& exponent);

Expr numeric_pow(const Rational& b, const Rational& e) {
  if (is_integer(e)) {
    long k = numerator(e).convert_to<long>();
    if (b == 0 && k < 0) throw std::domain_error("division by zero");
    return Expr(rational_pow(b, k));
  }
  if (b == 0 && e > 0) return Expr(0);
  if (b == 1) return Expr(1);
  if (b > 0) {
    BigInt q = denominator(e);
    if (q <= 64) {
      if (auto root = exact_root(b, q.convert_to<unsigned>())) {
        return Expr(rational_pow(*root, numerator(e).convert_to<long>()));
      }
    }
  }
  Node n;
  n.kind = NodeKind::pow;
  n.ops = {Expr(b), Expr(e)};
  return ExprFactory::make(std::move(n));
}

Expr make_pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero_literal()) return Expr(1);
  if (exponent.is_number(1)) return base;
  if (base.is_number(1)) return base;
  if (base.kind() == NodeKind::func && base.fn() == Fn::exp)
    return Expr::func(Fn::exp, base.ops()[0] * exponent);
  if (exponent.is_number()) {
    const Rational& e = exponent.value();
    if (base.is_number()) return numeric_pow(base.value(), e);
    if (base.kind() == NodeKind::pow && is_integer(e)) return make_pow(base.ops()[0], base.ops()[1] * exponent);
    if (base.kind() == NodeKind::mul && is_integer(e)) {
      std::vector<Expr> factors;
      for (const auto& f : base.ops()) factors.push_back(make_pow(f, exponent));
      return make_mul(std::move(factors));
    }
  }
  if (base.is_zero_literal() && exponent.is_number() && exponent.value() > 0) return base;
  Node n;
  n.kind = NodeKind::pow;
  n.ops = {base, exponent};
  return ExprFactory::make(std::move(n));
}

Expr make_mul(std::vector<Expr> input) {
  Rational coeff = 1;
  ExprMap<std::vector<Expr>> powers;
  std::function<void(const Expr&)> absorb = [&](const Expr& e) {
    switch (e.kind()) {
      case NodeKind::number: coeff *= e.value(); break;
      case NodeKind::mul:
        for (const auto& f : e.ops()) absorb(f);
        break;
      case NodeKind::pow: powers.at(e.ops()[0], {}).push_back(e.ops()[1]); break;
      default: powers.at(e, {}).push_back(Expr(1)); break;
    }
  };
  for (const auto& e : input) absorb(e);
  if (coeff == 0) return Expr(0);

  std::vector<Expr> factors;
  for (auto& [base, exps] : powers.entries()) {
    Expr total = exps.size() == 1 ? exps.front() : make_add(exps);
    Expr p = make_pow(base, total);
    if (p.is_number()) {
      coeff *= p.value();
    } else if (p.kind() == NodeKind::mul) {
      for (const auto& f : p.ops()) {
        if (f.is_number()) coeff *= f.value();
        else factors.push_back(f);
      }
    } else {
      factors.push_back(p);
    }
  }
  if (coeff == 0) return Expr(0);
  std::sort(factors.begin(), factors.end(), factor_less);
  if (factors.empty()) return Expr(coeff);
  if (factors.size() == 1) {
    if (coeff == 1) return factors.front();
    if (factors.front().kind() == NodeKind::add) {
      std::vector<Expr> terms;
      for (const auto& t : factors.front().ops()) terms.push_back(make_mul({Expr(coeff), t}));
      return make_add(std::move(terms));
    }
  }
  return ExprFactory::mul_node(coeff, std::move(factors));
}

Expr make_add(std::vector<Expr> input) {
  Rational constant = 0;
  ExprMap<Rational> terms;
  std::function<void(const Expr&)> absorb = [&](const Expr& e) {
    if (e.is_number()) {
      constant += e.value();
    } else if (e.kind() == NodeKind::add) {
      for (const auto& t : e.ops()) absorb(t);
    } else {
      auto [c, rest] = e.coefficient_split();
      terms.at(rest, Rational(0)) += c;
    }
  };
  for (const auto& e : input) absorb(e);

  auto& entries = terms.entries();
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  for (auto& [rest, c] : entries) {
    if (c == 0) continue;
    if (c == 1) {
      out.push_back(rest);
    } else if (rest.kind() == NodeKind::mul) {
      out.push_back(ExprFactory::mul_node(c, rest.ops()));
    } else {
      out.push_back(ExprFactory::mul_node(c, {rest}));
    }
  }
  if (out.empty()) return Expr(constant);
  if (out.size() == 1 && constant == 0) return out.front();
  Node n;
  n.kind = NodeKind::add;
  if (constant != 0) n.ops.push_back(Expr(constant));
  for (auto& t : out) n.ops.push_back(std::move(t));
  return ExprFactory::make(std::move(n));
}

Expr make_func(Fn fn, const Expr& arg) {
  if (arg.is_number()) {
    const Rational& v = arg.value();
    switch (fn) {
      case Fn::exp:
      case Fn::cos:
      case Fn::cosh:
        if (v == 0) return Expr(1);
        break;
      case Fn::sin:
      case Fn::tan:
      case Fn::sinh:
        if (v == 0) return Expr(0);
        break;
      case Fn::ln:
        if (v == 1) return Expr(0);
        break;
      case Fn::abs: return Expr(v < 0 ? Rational(-v) : v);
    }
  }
  if (fn == Fn::ln && arg.kind() == NodeKind::func && arg.fn() == Fn::exp) return arg.ops()[0];
  Node n;
  n.kind = NodeKind::func;
  n.fn = fn;
  n.ops = {arg};
  return ExprFactory::make(std::move(n));
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(int value) : Expr(Rational(value)) {}
Expr::Expr(long value) : Expr(Rational(value)) {}
Expr::Expr(const Rational& value) {
  if (value == 0) node_ = zero_expr().node_;
  else if (value == 1) node_ = one_expr().node_;
  else node_ = ExprFactory::number_node(value).node_;
}

Expr Expr::number(const Rational& value) { return Expr(value); }

Expr Expr::symbol(std::string_view name, bool allow_basis) {
  SymbolInfo info = resolve_symbol(name, allow_basis);
  Node n;
  n.kind = NodeKind::symbol;
  n.skind = info.kind;
  n.name = std::move(info.name);
  return ExprFactory::make(std::move(n));
}

Expr Expr::func(Fn fn, const Expr& arg) { return make_func(fn, arg); }

Expr Expr::apply(std::string_view name, std::vector<int> orders, std::vector<Expr> args) {
  if (!is_opaque_function(name)) throw SymbolError("unknown function '" + std::string(name) + "'");
  if (orders.size() != args.size())
    throw std::invalid_argument("apply: orders/args arity mismatch for " + std::string(name));
  Node n;
  n.kind = NodeKind::apply;
  n.name = std::string(name);
  n.orders = std::move(orders);
  n.ops = std::move(args);
  return ExprFactory::make(std::move(n));
}

Expr Expr::add(std::vector<Expr> terms) { return make_add(std::move(terms)); }
Expr Expr::mul(std::vector<Expr> factors) { return make_mul(std::move(factors)); }
Expr Expr::pow(const Expr& base, const Expr& exponent) { return make_pow(base, exponent); }

NodeKind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
SymbolKind Expr::symbol_kind() const { return node_->skind; }
Fn Expr::fn() const { return node_->fn; }
const std::vector<int>& Expr::orders() const { return node_->orders; }
const std::vector<Expr>& Expr::ops() const { return node_->ops; }
std::uint64_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::symbol_mask() const { return node_->mask; }

bool Expr::is_number(const Rational& v) const { return is_number() && value() == v; }
bool Expr::is_symbol(std::string_view name) const { return is_symbol() && node_->name == name; }

std::pair<Rational, Expr> Expr::coefficient_split() const {
  if (is_number()) return {value(), Expr(1)};
  if (kind() == NodeKind::mul && ops().front().is_number()) {
    const auto& all = ops();
    if (all.size() == 2) return {all[0].value(), all[1]};
    return {all[0].value(), ExprFactory::mul_node(Rational(1), {all.begin() + 1, all.end()})};
  }
  return {Rational(1), *this};
}

std::pair<Expr, Expr> Expr::power_split() const {
  if (kind() == NodeKind::pow) return {ops()[0], ops()[1]};
  return {*this, Expr(1)};
}

std::string Expr::str() const { return render(*this); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.kind() != b.kind()) return cmp3(kind_rank(a.kind()), kind_rank(b.kind()));
  switch (a.kind()) {
    case NodeKind::number: return cmp3(a.value(), b.value());
    case NodeKind::symbol:
      if (a.symbol_kind() != b.symbol_kind())
        return cmp3(static_cast<int>(a.symbol_kind()), static_cast<int>(b.symbol_kind()));
      return cmp3(a.name(), b.name());
    case NodeKind::apply:
      if (int c = cmp3(a.name(), b.name()); c != 0) return c;
      if (int c = cmp3(a.orders(), b.orders()); c != 0) return c;
      return compare_ops(a.ops(), b.ops());
    case NodeKind::func:
      if (a.fn() != b.fn()) return cmp3(static_cast<int>(a.fn()), static_cast<int>(b.fn()));
      return compare_ops(a.ops(), b.ops());
    default: return compare_ops(a.ops(), b.ops());
  }
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero_literal()) return b;
  if (b.is_zero_literal()) return a;
  return make_add({a, b});
}
Expr operator-(const Expr& a) {
  if (a.is_number()) return Expr(Rational(-a.value()));
  return make_mul({Expr(-1), a});
}
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero_literal() || b.is_zero_literal()) return Expr(0);
  if (a.is_number(1)) return b;
  if (b.is_number(1)) return a;
  return make_mul({a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_literal()) throw std::domain_error("division by zero");
  return a * make_pow(b, Expr(-1));
}
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, const Expr& exponent) { return make_pow(base, exponent); }
Expr sym(std::string_view name) { return Expr::symbol(name); }
Expr exp(const Expr& e) { return make_func(Fn::exp, e); }
Expr ln(const Expr& e) { return make_func(Fn::ln, e); }
Expr sin(const Expr& e) { return make_func(Fn::sin, e); }
Expr cos(const Expr& e) { return make_func(Fn::cos, e); }
Expr sqrt(const Expr& e) { return make_pow(e, Expr(Rational(1, 2))); }

namespace {

template <typename Visit>
void walk(const Expr& e, Visit&& visit) {
  std::unordered_set<const Node*> seen;
  std::vector<Expr> stack{e};
  while (!stack.empty()) {
    Expr cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.node()).second) continue;
    visit(cur);
    for (const auto& op : cur.ops()) stack.push_back(op);
  }
}

}  // namespace

bool depends_on(const Expr& e, std::string_view name) {
  const std::uint64_t bit = symbol_bit(name);
  if ((e.symbol_mask() & bit) == 0) return false;
  if (e.is_symbol()) return e.name() == name;
  return std::any_of(e.ops().begin(), e.ops().end(),
                     [&](const Expr& op) { return depends_on(op, name); });
}

bool contains_kind(const Expr& e, SymbolKind kind) {
  bool found = false;
  walk(e, [&](const Expr& n) {
    if (n.is_symbol() && n.symbol_kind() == kind) found = true;
  });
  return found;
}

bool contains_apply(const Expr& e, std::string_view name) {
  bool found = false;
  walk(e, [&](const Expr& n) {
    if (n.kind() == NodeKind::apply && (name.empty() || n.name() == name)) found = true;
  });
  return found;
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& n) {
    if (n.is_symbol()) out.insert(n.name());
  });
  return out;
}

std::set<std::string> applied_functions(const Expr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& n) {
    if (n.kind() == NodeKind::apply) out.insert(n.name());
  });
  return out;
}

std::size_t tree_size(const Expr& e) {
  std::size_t count = 0;
  walk(e, [&](const Expr&) { ++count; });
  return count;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << render(e); }

}  // namespace kolmo
