#include "kolmo/symmetry/prolongation.hpp"

#include "kolmo/expr/calculus.hpp"

namespace kolmo {

namespace {

int axis(char v) {
  switch (v) {
    case 't': return 0;
    case 'x': return 1;
    case 'y': return 2;
    default: throw std::invalid_argument(std::string("total derivative along '") + v + "'");
  }
}

Expr d(const Expr& e, const char* s) { return differentiate(e, s); }

}  // namespace

Expr total_derivative(const Expr& e, char v) {
  const int k = axis(v);
  const std::string var(1, v);
  Expr out = differentiate(e, var);
  Expr du = differentiate(e, "u");
  if (!du.is_zero_literal()) {
    std::array<int, 3> idx{0, 0, 0};
    idx[static_cast<std::size_t>(k)] = 1;
    out += Expr::symbol(jet_name(idx)) * du;
  }
  for (const auto& name : free_symbols(e)) {
    if (name.rfind("u_", 0) != 0) continue;
    auto idx = jet_index(name);
    ++idx[static_cast<std::size_t>(k)];
    if (idx[0] + idx[1] + idx[2] > kMaxJetOrder)
      throw JetOrderError("total derivative of " + name + " exceeds jet order " + std::to_string(kMaxJetOrder));
    out += Expr::symbol(jet_name(idx)) * differentiate(e, name);
  }
  return out;
}

ProlongedField prolong(const VectorField& X) {
  const Expr ut = sym("u_t"), ux = sym("u_x"), uy = sym("u_y");
  auto first = [&](char v) {
    return total_derivative(X.eta, v) - ut * total_derivative(X.xi0, v) - ux * total_derivative(X.xi1, v) -
           uy * total_derivative(X.xi2, v);
  };
  ProlongedField p;
  p.base = X;
  p.eta_t = first('t');
  p.eta_x = first('x');
  p.eta_y = first('y');
  p.eta_xx = total_derivative(p.eta_x, 'x') - sym("u_tx") * total_derivative(X.xi0, 'x') -
             sym("u_xx") * total_derivative(X.xi1, 'x') - sym("u_xy") * total_derivative(X.xi2, 'x');
  return p;
}

Expr invariance_residual(const VectorField& X, const PdeInstance& pde) {
  const ProlongedField p = prolong(X);
  const Expr s(pde.y_sign);
  Expr delta = p.eta_t - p.eta_xx + s * pde.f1_dot() * X.eta * sym("u_y") + s * pde.f1 * p.eta_y -
               pde.f2_dot() * X.eta;
  Expr ut = pde.u_t_on_manifold();
  Bindings b;
  b.bind("u_t", ut);
  b.bind("u_tx", total_derivative(ut, 'x'));
  return substitute(delta, b);
}

std::vector<DeterminingResidual> determining_residuals(const VectorField& X, const PdeInstance& pde) {
  const Expr s(pde.y_sign);
  const Expr f1 = s * pde.f1;
  const Expr f1_dot = s * pde.f1_dot();
  const Expr& f2 = pde.f2;
  const Expr f2_dot = pde.f2_dot();
  const Expr &xi0 = X.xi0, &xi1 = X.xi1, &xi2 = X.xi2, &eta = X.eta;

  std::vector<DeterminingResidual> out;
  out.push_back({"xi0_x", d(xi0, "x")});
  out.push_back({"xi0_u", d(xi0, "u")});
  out.push_back({"xi1_u", d(xi1, "u")});
  out.push_back({"xi2_x", d(xi2, "x")});
  out.push_back({"xi2_u", d(xi2, "u")});
  out.push_back({"eta_uu", differentiate(eta, "u", 2)});
  out.push_back({"time scaling", d(xi0, "t") - Expr(2) * d(xi1, "x") + d(xi0, "y") * f1});
  out.push_back({"x transport",
                 d(xi1, "t") - differentiate(xi1, "x", 2) + d(xi1, "y") * f1 + Expr(2) * d(d(eta, "u"), "x")});
  out.push_back({"f1 condition", eta * f1_dot - (d(xi2, "y") - Expr(2) * d(xi1, "x")) * f1 - d(xi2, "t")});
  out.push_back({"f2 condition", eta * f2_dot - (d(eta, "u") - Expr(2) * d(xi1, "x")) * f2 - d(eta, "y") * f1 -
                                     d(eta, "t") + differentiate(eta, "x", 2)});
  return out;
}

}  // namespace kolmo
