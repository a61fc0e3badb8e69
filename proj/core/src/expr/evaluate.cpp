#include "kolmo/expr/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace kolmo {

Program Program::compile(const std::vector<Expr>& roots) {
  Program p;
  std::set<std::string> names;
  for (const auto& r : roots) {
    auto s = free_symbols(r);
    names.insert(s.begin(), s.end());
  }
  p.variables_.assign(names.begin(), names.end());

  std::unordered_map<const Node*, int> index;
  std::function<int(const Expr&)> emit = [&](const Expr& e) -> int {
    if (auto it = index.find(e.node()); it != index.end()) return it->second;
    std::vector<int> kids;
    for (const auto& op : e.ops()) kids.push_back(emit(op));
    Instr ins;
    switch (e.kind()) {
      case NodeKind::number:
        ins.op = Op::constant;
        ins.number = to_double(e.value());
        break;
      case NodeKind::symbol: {
        ins.op = Op::variable;
        auto it = std::lower_bound(p.variables_.begin(), p.variables_.end(), e.name());
        ins.first = static_cast<int>(it - p.variables_.begin());
        break;
      }
      case NodeKind::add: ins.op = Op::add; break;
      case NodeKind::mul: ins.op = Op::mul; break;
      case NodeKind::pow: {
        const Expr& x = e.ops()[1];
        ins.op = Op::pow;
        if (x.is_number()) {
          const Rational& v = x.value();
          if (is_integer(v) && abs(numerator(v)) < 1000) {
            ins.op = Op::pow_int;
            ins.number = to_double(v);
          } else if (abs(numerator(v)) < 1000000 && denominator(v) < 1000000) {
            ins.op = Op::pow_rational;
            ins.num = numerator(v).convert_to<long>();
            ins.den = denominator(v).convert_to<long>();
          }
        }
        break;
      }
      case NodeKind::func:
        ins.op = Op::func;
        ins.fn = e.fn();
        break;
      case NodeKind::apply:
        ins.op = Op::apply;
        ins.name = e.name();
        ins.orders = e.orders();
        p.uses_opaque_ = true;
        break;
    }
    if (ins.op != Op::constant && ins.op != Op::variable) {
      ins.first = static_cast<int>(p.args_.size());
      ins.count = static_cast<int>(kids.size());
      p.args_.insert(p.args_.end(), kids.begin(), kids.end());
    }
    int id = static_cast<int>(p.code_.size());
    p.code_.push_back(std::move(ins));
    index.emplace(e.node(), id);
    return id;
  };
  for (const auto& r : roots) p.roots_.push_back(emit(r));
  return p;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

EvalStatus Program::run(std::span<const double> values, std::span<double> out, const Options& options,
                        std::string* detail) const {
  std::vector<double> reg(code_.size());
  auto fail = [&](EvalStatus s, const std::string& msg) {
    if (detail) *detail = msg;
    return s;
  };
  const double guard = options.singular_guard;
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& ins = code_[i];
    const int* kid = args_.data() + ins.first;
    double v = 0.0;
    switch (ins.op) {
      case Op::constant: v = ins.number; break;
      case Op::variable: v = values[static_cast<std::size_t>(ins.first)]; break;
      case Op::add:
        for (int k = 0; k < ins.count; ++k) v += reg[static_cast<std::size_t>(kid[k])];
        break;
      case Op::mul:
        v = 1.0;
        for (int k = 0; k < ins.count; ++k) v *= reg[static_cast<std::size_t>(kid[k])];
        break;
      case Op::pow_int: {
        double b = reg[static_cast<std::size_t>(kid[0])];
        if (ins.number < 0 && std::abs(b) <= guard)
          return fail(b == 0.0 ? EvalStatus::non_finite : EvalStatus::near_singular,
                      "denominator " + fmt(b) + " too close to zero");
        v = std::pow(b, ins.number);
        break;
      }
      case Op::pow_rational: {
        double b = reg[static_cast<std::size_t>(kid[0])];
        double e = static_cast<double>(ins.num) / static_cast<double>(ins.den);
        if (e < 0 && std::abs(b) <= guard)
          return fail(b == 0.0 ? EvalStatus::non_finite : EvalStatus::near_singular,
                      "denominator " + fmt(b) + " too close to zero");
        if (b < 0) {
          if (ins.den % 2 == 0) return fail(EvalStatus::domain, "even root of negative value " + fmt(b));
          double mag = std::pow(-b, e);
          v = (ins.num % 2 == 0) ? mag : -mag;
        } else {
          v = std::pow(b, e);
        }
        break;
      }
      case Op::pow: {
        double b = reg[static_cast<std::size_t>(kid[0])];
        double e = reg[static_cast<std::size_t>(kid[1])];
        if (b < 0 && e != std::floor(e))
          return fail(EvalStatus::domain, "negative base " + fmt(b) + " to non-integer power " + fmt(e));
        if (e < 0 && std::abs(b) <= guard)
          return fail(b == 0.0 ? EvalStatus::non_finite : EvalStatus::near_singular,
                      "denominator " + fmt(b) + " too close to zero");
        v = std::pow(b, e);
        break;
      }
      case Op::func: {
        double a = reg[static_cast<std::size_t>(kid[0])];
        switch (ins.fn) {
          case Fn::exp: v = std::exp(a); break;
          case Fn::ln:
            if (a <= 0) return fail(EvalStatus::domain, "ln of non-positive value " + fmt(a));
            v = std::log(a);
            break;
          case Fn::sin: v = std::sin(a); break;
          case Fn::cos: v = std::cos(a); break;
          case Fn::tan:
            if (std::abs(std::cos(a)) <= guard)
              return fail(EvalStatus::near_singular, "tan near its pole at " + fmt(a));
            v = std::tan(a);
            break;
          case Fn::sinh: v = std::sinh(a); break;
          case Fn::cosh: v = std::cosh(a); break;
          case Fn::abs: v = std::abs(a); break;
        }
        break;
      }
      case Op::apply: {
        if (!options.opaque) return fail(EvalStatus::domain, "no value for opaque function " + ins.name);
        std::vector<double> a(static_cast<std::size_t>(ins.count));
        for (int k = 0; k < ins.count; ++k) a[static_cast<std::size_t>(k)] = reg[static_cast<std::size_t>(kid[k])];
        v = (*options.opaque)(ins.name, ins.orders, a);
        break;
      }
    }
    if (!std::isfinite(v)) return fail(EvalStatus::non_finite, "non-finite intermediate value");
    reg[i] = v;
  }
  for (std::size_t r = 0; r < roots_.size(); ++r) out[r] = reg[static_cast<std::size_t>(roots_[r])];
  return EvalStatus::ok;
}

double evaluate(const Expr& e, const std::map<std::string, double>& point, const OpaqueFn* opaque) {
  Program p = Program::compile(e);
  std::vector<double> values;
  for (const auto& name : p.variables()) {
    auto it = point.find(name);
    if (it == point.end()) throw EvalError(EvalStatus::domain, "unbound symbol '" + name + "'");
    values.push_back(it->second);
  }
  double out = 0.0;
  std::string detail;
  Program::Options options;
  options.opaque = opaque;
  EvalStatus s = p.run(values, std::span<double>(&out, 1), options, &detail);
  if (s != EvalStatus::ok) {
    std::string where;
    for (const auto& name : p.variables()) where += " " + name + "=" + fmt(point.at(name));
    throw EvalError(s, detail + " (at" + where + ")");
  }
  return out;
}

}  // namespace kolmo
