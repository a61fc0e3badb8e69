#include "kolmo/expr/calculus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace kolmo {

namespace {

using Memo = std::unordered_map<const Node*, Expr>;

Expr rebuild(const Expr& e, std::vector<Expr> ops) {
  bool same = ops.size() == e.ops().size();
  for (std::size_t i = 0; same && i < ops.size(); ++i) same = ops[i].node() == e.ops()[i].node();
  if (same) return e;
  switch (e.kind()) {
    case NodeKind::add: return Expr::add(std::move(ops));
    case NodeKind::mul: return Expr::mul(std::move(ops));
    case NodeKind::pow: return pow(ops[0], ops[1]);
    case NodeKind::func: return Expr::func(e.fn(), ops[0]);
    case NodeKind::apply: return Expr::apply(e.name(), e.orders(), std::move(ops));
    default: return e;
  }
}

Expr diff_func(Fn fn, const Expr& a) {
  switch (fn) {
    case Fn::exp: return exp(a);
    case Fn::ln: return pow(a, Expr(-1));
    case Fn::sin: return cos(a);
    case Fn::cos: return -sin(a);
    case Fn::tan: return Expr(1) + pow(Expr::func(Fn::tan, a), Expr(2));
    case Fn::sinh: return Expr::func(Fn::cosh, a);
    case Fn::cosh: return Expr::func(Fn::sinh, a);
    case Fn::abs: return Expr::func(Fn::abs, a) / a;
  }
  return Expr(0);
}

class Differentiator {
 public:
  explicit Differentiator(std::string_view s) : s_(s), probe_(Expr::symbol(s_, true).symbol_mask()) {}

  Expr operator()(const Expr& e) {
    if ((e.symbol_mask() & probe_) == 0) return Expr(0);
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.node(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::number: return Expr(0);
      case NodeKind::symbol: return Expr(e.name() == s_ ? 1 : 0);
      case NodeKind::add: {
        std::vector<Expr> terms;
        for (const auto& t : e.ops()) terms.push_back((*this)(t));
        return Expr::add(std::move(terms));
      }
      case NodeKind::mul: {
        const auto& f = e.ops();
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < f.size(); ++i) {
          Expr df = (*this)(f[i]);
          if (df.is_zero_literal()) continue;
          std::vector<Expr> prod{df};
          for (std::size_t j = 0; j < f.size(); ++j) {
            if (j != i) prod.push_back(f[j]);
          }
          terms.push_back(Expr::mul(std::move(prod)));
        }
        return Expr::add(std::move(terms));
      }
      case NodeKind::pow: {
        const Expr& b = e.ops()[0];
        const Expr& x = e.ops()[1];
        Expr db = (*this)(b);
        Expr dx = (*this)(x);
        if (dx.is_zero_literal()) return x * pow(b, x - Expr(1)) * db;
        return e * (dx * ln(b) + x * db / b);
      }
      case NodeKind::func: {
        const Expr& a = e.ops()[0];
        return diff_func(e.fn(), a) * (*this)(a);
      }
      case NodeKind::apply: {
        std::vector<Expr> terms;
        for (std::size_t k = 0; k < e.ops().size(); ++k) {
          Expr da = (*this)(e.ops()[k]);
          if (da.is_zero_literal()) continue;
          std::vector<int> orders = e.orders();
          ++orders[k];
          terms.push_back(Expr::apply(e.name(), std::move(orders), e.ops()) * da);
        }
        return Expr::add(std::move(terms));
      }
    }
    return Expr(0);
  }

  std::string s_;
  std::uint64_t probe_;
  Memo memo_;
};

void check_acyclic(const Bindings& b) {
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& [name, value] : b.symbols) {
    for (const auto& dep : free_symbols(value)) {
      if (dep != name && b.symbols.count(dep)) edges[name].push_back(dep);
    }
  }
  std::map<std::string, int> state;  // 1 = on stack, 2 = done
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    state[n] = 1;
    for (const auto& m : edges[n]) {
      if (state[m] == 1) throw CyclicBindingError("cyclic binding through '" + n + "' and '" + m + "'");
      if (state[m] == 0) visit(m);
    }
    state[n] = 2;
  };
  for (const auto& [name, _] : b.symbols) {
    if (state[name] == 0) visit(name);
  }
}

class Substituter {
 public:
  explicit Substituter(const Bindings& b) : b_(b) {
    for (const auto& [name, _] : b.symbols) mask_ |= Expr::symbol(name, true).symbol_mask();
  }

  Expr operator()(const Expr& e) {
    if ((e.symbol_mask() & mask_) == 0 && (b_.functions.empty() || !has_apply(e))) return e;
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr r = compute(e);
    memo_.emplace(e.node(), r);
    return r;
  }

 private:
  bool has_apply(const Expr& e) {
    if (e.kind() == NodeKind::apply) return true;
    if (e.kind() == NodeKind::number || e.kind() == NodeKind::symbol) return false;
    if (auto it = apply_memo_.find(e.node()); it != apply_memo_.end()) return it->second;
    bool found = std::any_of(e.ops().begin(), e.ops().end(), [&](const Expr& op) { return has_apply(op); });
    apply_memo_.emplace(e.node(), found);
    return found;
  }

  Expr compute(const Expr& e) {
    if (e.is_symbol()) {
      auto it = b_.symbols.find(e.name());
      return it == b_.symbols.end() ? e : it->second;
    }
    std::vector<Expr> ops;
    ops.reserve(e.ops().size());
    for (const auto& op : e.ops()) ops.push_back((*this)(op));
    if (e.kind() == NodeKind::apply) {
      auto it = b_.functions.find(e.name());
      if (it != b_.functions.end()) return call(it->second, e.orders(), ops, e.name());
    }
    return rebuild(e, std::move(ops));
  }

  static Expr call(const Lambda& f, const std::vector<int>& orders, const std::vector<Expr>& args,
                   const std::string& name) {
    if (f.params.size() != args.size())
      throw std::invalid_argument("binding for '" + name + "' has wrong arity");
    Expr body = f.body;
    for (std::size_t k = 0; k < orders.size(); ++k) body = differentiate(body, f.params[k], orders[k]);
    Bindings inner;
    for (std::size_t k = 0; k < args.size(); ++k) inner.bind(f.params[k], args[k]);
    return substitute(body, inner);
  }

  const Bindings& b_;
  std::uint64_t mask_ = 0;
  Memo memo_;
  std::unordered_map<const Node*, bool> apply_memo_;
};

class Expander {
 public:
  Expr operator()(const Expr& e) {
    if (e.kind() == NodeKind::number || e.kind() == NodeKind::symbol) return e;
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr r = compute(e);
    memo_.emplace(e.node(), r);
    return r;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::add: {
        std::vector<Expr> terms;
        for (const auto& t : e.ops()) terms.push_back((*this)(t));
        return Expr::add(std::move(terms));
      }
      case NodeKind::mul: {
        std::vector<Expr> factors;
        for (const auto& f : e.ops()) factors.push_back((*this)(f));
        return multiply_out(factors);
      }
      case NodeKind::pow: {
        Expr b = (*this)(e.ops()[0]);
        Expr x = (*this)(e.ops()[1]);
        if (b.kind() == NodeKind::add && x.is_number() && is_integer(x.value()) && x.value() > 1) {
          long n = numerator(x.value()).convert_to<long>();
          return multiply_out(std::vector<Expr>(static_cast<std::size_t>(n), b));
        }
        return pow(b, x);
      }
      default: {
        std::vector<Expr> ops;
        for (const auto& op : e.ops()) ops.push_back((*this)(op));
        return rebuild(e, std::move(ops));
      }
    }
  }

  Expr multiply_out(const std::vector<Expr>& factors) {
    std::vector<Expr> acc{Expr(1)};
    for (const auto& f : factors) {
      std::vector<Expr> terms = terms_of(f);
      std::vector<Expr> next;
      next.reserve(acc.size() * terms.size());
      for (const auto& a : acc) {
        for (const auto& t : terms) next.push_back(a * t);
      }
      acc = std::move(next);
    }
    // A product can re-collect into a sum, e.g. (a+b)^-1 * (a+b)^2.
    for (auto& term : acc) {
      if (term.kind() == NodeKind::add) {
        term = (*this)(term);
      } else if (term.kind() == NodeKind::mul &&
                 std::any_of(term.ops().begin(), term.ops().end(),
                             [](const Expr& f) { return f.kind() == NodeKind::add; })) {
        term = multiply_out(term.ops());
      }
    }
    return Expr::add(std::move(acc));
  }

  Memo memo_;
};

}  // namespace

Expr differentiate(const Expr& e, std::string_view symbol) { return Differentiator(symbol)(e); }

Expr differentiate(const Expr& e, std::string_view symbol, int times) {
  Expr r = e;
  for (int i = 0; i < times; ++i) r = differentiate(r, symbol);
  return r;
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  check_acyclic(bindings);
  return Substituter(bindings)(e);
}

Expr substitute(const Expr& e, std::string_view symbol, const Expr& value) {
  Bindings b;
  b.bind(std::string(symbol), value);
  return substitute(e, b);
}

Expr expand(const Expr& e) { return Expander()(e); }

std::vector<Expr> terms_of(const Expr& e) {
  if (e.kind() == NodeKind::add) return e.ops();
  return {e};
}

namespace detail {

std::vector<std::pair<Expr, Expr>> collect_impl(const Expr& e, const std::function<bool(const Expr&)>& is_key) {
  std::vector<std::pair<Expr, std::vector<Expr>>> groups;
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  for (const auto& term : terms_of(expand(e))) {
    std::vector<Expr> key;
    std::vector<Expr> rest;
    std::vector<Expr> factors = term.kind() == NodeKind::mul ? term.ops() : std::vector<Expr>{term};
    for (const auto& f : factors) (!f.is_number() && is_key(f) ? key : rest).push_back(f);
    Expr k = Expr::mul(std::move(key));
    Expr c = Expr::mul(std::move(rest));
    std::size_t slot = groups.size();
    auto range = index.equal_range(k.hash());
    for (auto it = range.first; it != range.second; ++it) {
      if (groups[it->second].first == k) slot = it->second;
    }
    if (slot == groups.size()) {
      index.emplace(k.hash(), slot);
      groups.emplace_back(k, std::vector<Expr>{});
    }
    groups[slot].second.push_back(c);
  }
  std::vector<std::pair<Expr, Expr>> out;
  for (auto& [k, cs] : groups) {
    Expr c = Expr::add(std::move(cs));
    if (!c.is_zero_literal()) out.emplace_back(k, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  return out;
}

}  // namespace detail

std::vector<std::pair<Expr, Expr>> collect_symbols(const Expr& e, const std::vector<std::string>& names) {
  std::set<std::string> keys(names.begin(), names.end());
  return collect(e, [&](const Expr& f) {
    auto [b, x] = f.power_split();
    return b.is_symbol() && keys.count(b.name()) && x.is_number() && is_integer(x.value()) && x.value() > 0;
  });
}

std::vector<Expr> polynomial_coefficients(const Expr& e, std::string_view s) {
  std::vector<Expr> coeffs;
  for (const auto& [key, c] : collect_symbols(e, {std::string(s)})) {
    if (depends_on(c, s))
      throw std::invalid_argument("expression is not polynomial in " + std::string(s));
    auto [b, x] = key.power_split();
    std::size_t k = key.is_number() ? 0 : numerator(x.value()).convert_to<std::size_t>();
    if (coeffs.size() <= k) coeffs.resize(k + 1);
    coeffs[k] = coeffs[k] + c;
  }
  return coeffs;
}

}  // namespace kolmo
