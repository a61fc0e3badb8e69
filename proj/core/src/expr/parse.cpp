#include "kolmo/expr/parse.hpp"

#include <cctype>
#include <vector>

namespace kolmo {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr lhs = term();
    while (true) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr rhs = unary();
        if (rhs.is_zero_literal()) throw ParseError("division by zero", at);
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      // Exponent may carry its own sign: x^-2.
      Expr exponent = unary_exponent();
      return pow(base, exponent);
    }
    return base;
  }

  Expr unary_exponent() {
    if (accept('-')) return -unary_exponent();
    return power();
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) throw ParseError("malformed number", start);
    return Expr(*value);
  }

  std::vector<Expr> arguments() {
    std::vector<Expr> args;
    expect('(');
    if (accept(')')) return args;
    do {
      args.push_back(expression());
    } while (accept(','));
    expect(')');
    return args;
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    int primes = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    skip_space();
    bool call = pos_ < text_.size() && text_[pos_] == '(';

    if (is_elementary_function(name)) {
      if (!call || primes) throw ParseError("function '" + name + "' needs one argument", start);
      auto args = arguments();
      if (args.size() != 1) throw ParseError("function '" + name + "' takes one argument", start);
      return elementary(name, args[0]);
    }
    if (name == "f1" || name == "f2" || name == "g") {
      if (!call) throw ParseError("function '" + name + "' must be applied", start);
      auto args = arguments();
      if (args.size() != 1) throw ParseError("function '" + name + "' takes one argument", start);
      if (name != "g" && !args[0].is_symbol("u"))
        throw ParseError("'" + name + "' may only be applied to u", start);
      return Expr::apply(name, {primes}, std::move(args));
    }
    if (name == "phi" || (name.rfind("phi_", 0) == 0 && call)) {
      if (primes) throw ParseError("use phi_w1 style subscripts for phi derivatives", start);
      if (!call) return Expr::symbol("phi");
      auto args = arguments();
      if (args.empty() || args.size() > 2) throw ParseError("phi takes one or two arguments", start);
      std::vector<int> orders(args.size(), 0);
      if (name != "phi") {
        std::array<int, 2> idx{};
        try {
          idx = phi_jet_index(name);
        } catch (const SymbolError& e) {
          throw ParseError(e.what(), start);
        }
        if (args.size() == 1 && idx[1] != 0) throw ParseError("w2 derivative of a one-argument phi", start);
        orders[0] = idx[0];
        if (args.size() == 2) orders[1] = idx[1];
      }
      return Expr::apply("phi", std::move(orders), std::move(args));
    }
    if (primes) throw ParseError("unexpected prime after '" + name + "'", start);
    if (call) throw ParseError("unknown function '" + name + "'", start);
    try {
      return Expr::symbol(name, options_.allow_basis);
    } catch (const SymbolError& e) {
      throw ParseError(e.what(), start);
    }
  }

  static Expr elementary(const std::string& name, const Expr& arg) {
    if (name == "sqrt") return sqrt(arg);
    static const std::pair<const char*, Fn> kTable[] = {
        {"exp", Fn::exp},   {"ln", Fn::ln},     {"sin", Fn::sin}, {"cos", Fn::cos},
        {"tan", Fn::tan},   {"sinh", Fn::sinh}, {"cosh", Fn::cosh}, {"abs", Fn::abs}};
    for (const auto& [n, fn] : kTable) {
      if (name == n) return Expr::func(fn, arg);
    }
    return arg;  // unreachable: caller checked the name
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

}  // namespace kolmo
