#include "kolmo/symmetry/pde.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"

#include <stdexcept>

namespace kolmo {

PdeInstance PdeInstance::opaque(int y_sign) {
  PdeInstance p;
  Expr u = sym("u");
  p.f1 = Expr::apply("f1", {0}, {u});
  p.f2 = Expr::apply("f2", {0}, {u});
  p.y_sign = y_sign;
  p.label = "opaque";
  return p;
}

PdeInstance PdeInstance::make(std::string_view f1, std::string_view f2, int y_sign) {
  PdeInstance p;
  p.f1 = parse(f1);
  p.f2 = parse(f2);
  p.y_sign = y_sign;
  validate(p);
  return p;
}

Expr PdeInstance::f1_dot() const { return differentiate(f1, "u"); }
Expr PdeInstance::f2_dot() const { return differentiate(f2, "u"); }

Expr PdeInstance::jet_form() const {
  return sym("u_t") - sym("u_xx") + Expr(y_sign) * f1 * sym("u_y") - f2;
}

Expr PdeInstance::u_t_on_manifold() const { return sym("u_xx") - Expr(y_sign) * f1 * sym("u_y") + f2; }

Expr PdeInstance::residual_of(const Expr& u) const {
  Expr f1u = substitute(f1, "u", u);
  Expr f2u = substitute(f2, "u", u);
  return differentiate(u, "t") - differentiate(u, "x", 2) + Expr(y_sign) * f1u * differentiate(u, "y") - f2u;
}

void validate(const PdeInstance& pde) {
  if (pde.y_sign != 1 && pde.y_sign != -1) throw std::invalid_argument("y_sign must be +1 or -1");
  for (const Expr* body : {&pde.f1, &pde.f2}) {
    for (const auto& s : free_symbols(*body)) {
      SymbolKind k = Expr::symbol(s).symbol_kind();
      if (k != SymbolKind::dependent && k != SymbolKind::parameter)
        throw std::invalid_argument("equation body depends on '" + s + "'");
    }
  }
  if (!contains_apply(pde.f1, "f1") && !depends_on(pde.f1, "u"))
    throw std::invalid_argument("f1 must depend on u");
}

}  // namespace kolmo
