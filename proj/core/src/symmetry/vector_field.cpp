#include "kolmo/symmetry/vector_field.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/render.hpp"

#include <stdexcept>

namespace kolmo {

namespace {

constexpr std::array<const char*, 4> kBasis = {"Dt", "Dx", "Dy", "Du"};
constexpr std::array<const char*, 4> kCoords = {"t", "x", "y", "u"};

Expr basis_symbol(std::size_t i) { return Expr::symbol(kBasis[i], true); }

}  // namespace

VectorField VectorField::parse(std::string_view text) {
  ParseOptions options;
  options.allow_basis = true;
  Expr e = kolmo::parse(text, options);
  std::array<Expr, 4> c;
  Expr rest = e;
  for (std::size_t i = 0; i < 4; ++i) {
    c[i] = differentiate(e, kBasis[i]);
    rest = rest - c[i] * basis_symbol(i);
  }
  rest = expand(rest);
  if (!rest.is_zero_literal())
    throw std::invalid_argument("vector field is not linear in Dt, Dx, Dy, Du: " + std::string(text));
  for (const auto& coeff : c) {
    if (contains_kind(coeff, SymbolKind::basis))
      throw std::invalid_argument("basis marker inside a coefficient: " + std::string(text));
  }
  VectorField X = from(c);
  validate(X);
  return X;
}

Expr VectorField::to_expr() const {
  Expr e;
  auto c = coefficients();
  for (std::size_t i = 0; i < 4; ++i) e += c[i] * basis_symbol(i);
  return e;
}

std::string VectorField::str() const { return render(to_expr()); }

bool VectorField::is_zero_field() const {
  return xi0.is_zero_literal() && xi1.is_zero_literal() && xi2.is_zero_literal() && eta.is_zero_literal();
}

Expr VectorField::apply(const Expr& f) const {
  auto c = coefficients();
  Expr out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!c[i].is_zero_literal()) out += c[i] * differentiate(f, kCoords[i]);
  }
  return out;
}

void validate(const VectorField& X) {
  for (const auto& c : X.coefficients()) {
    for (SymbolKind k : {SymbolKind::jet, SymbolKind::reduction, SymbolKind::reduction_jet, SymbolKind::basis}) {
      if (contains_kind(c, k))
        throw std::invalid_argument("vector field coefficient contains a " + std::string(kind_name(k)) +
                                    " symbol: " + render(c));
    }
    if (contains_apply(c)) throw std::invalid_argument("vector field coefficient applies an opaque function");
  }
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi0 + b.xi0, a.xi1 + b.xi1, a.xi2 + b.xi2, a.eta + b.eta};
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a.xi0 - b.xi0, a.xi1 - b.xi1, a.xi2 - b.xi2, a.eta - b.eta};
}
VectorField operator*(const Expr& c, const VectorField& a) { return {c * a.xi0, c * a.xi1, c * a.xi2, c * a.eta}; }

VectorField substitute(const VectorField& X, const Bindings& b) {
  return {substitute(X.xi0, b), substitute(X.xi1, b), substitute(X.xi2, b), substitute(X.eta, b)};
}

VectorField commutator(const VectorField& X, const VectorField& Y) {
  auto xc = X.coefficients();
  auto yc = Y.coefficients();
  std::array<Expr, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = expand(X.apply(yc[i]) - Y.apply(xc[i]));
  return VectorField::from(out);
}

}  // namespace kolmo
