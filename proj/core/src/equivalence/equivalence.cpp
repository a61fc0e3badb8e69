#include "kolmo/equivalence/equivalence.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/render.hpp"

#include <cmath>
#include <stdexcept>

namespace kolmo {

namespace {

Expr d(const Expr& e, const char* s) { return differentiate(e, s); }

void require_only(const Expr& e, std::initializer_list<const char*> allowed, const char* what) {
  for (const auto& s : free_symbols(e)) {
    SymbolKind k = Expr::symbol(s).symbol_kind();
    if (k == SymbolKind::parameter) continue;
    bool ok = false;
    for (const char* a : allowed) ok = ok || s == a;
    if (!ok) throw std::invalid_argument(std::string(what) + " must not depend on '" + s + "': " + render(e));
  }
}

}  // namespace

GEquivParams GEquivParams::identity() {
  GEquivParams p;
  p.a = {Expr(1), Expr(0), Expr(0), Expr(1), Expr(0), Expr(0), Expr(1), Expr(0)};
  return p;
}

GEquivParams compose(const GEquivParams& p, const GEquivParams& q) {
  GEquivParams r;
  const Expr two(2);
  r.a[0] = q(1) * p(1);
  r.a[1] = pow(q(1), two) * p(2) + q(2);
  r.a[2] = q(1) * p(3) + q(3);
  r.a[3] = q(4) * p(4);
  r.a[4] = q(4) * p(5) + q(5) * pow(p(1), two);
  r.a[5] = q(4) * p(6) + q(5) * p(2) + q(6);
  r.a[6] = q(7) * p(7);
  r.a[7] = q(7) * p(8) + q(8);
  return r;
}

PdeInstance apply_gequiv(const PdeInstance& pde, const GEquivParams& p) {
  for (int i : {1, 4, 7}) {
    if (p(i).is_zero_literal())
      throw std::invalid_argument("equivalence parameter a" + std::to_string(i) + " must be nonzero");
  }
  Bindings back;
  back.bind("u", (sym("u") - p(8)) / p(7));
  const Expr a1sq = pow(p(1), Expr(2));
  PdeInstance out = pde;
  out.f1 = (p(4) * substitute(pde.f1, back) + p(5)) / a1sq;
  out.f2 = p(7) * substitute(pde.f2, back) / a1sq;
  return out;
}

PointTransformation PointTransformation::from_maps(const Expr& tbar, const Expr& xbar, const Expr& ybar,
                                                   const Expr& ubar) {
  PointTransformation tr;
  tr.Tbar = tbar;
  tr.Xbar = xbar;
  tr.Ybar = ybar;
  tr.theta = differentiate(ubar, "u");
  tr.nu = substitute(ubar, "u", Expr(0));
  if (!expand(differentiate(tr.theta, "u")).is_zero_literal())
    throw std::invalid_argument("u map is not affine in u: " + render(ubar));
  validate(tr);
  return tr;
}

PointTransformation PointTransformation::parse(std::string_view t, std::string_view x, std::string_view y,
                                               std::string_view u) {
  return from_maps(kolmo::parse(t), kolmo::parse(x), kolmo::parse(y), kolmo::parse(u));
}

PointTransformation PointTransformation::identity() { return from_maps(sym("t"), sym("x"), sym("y"), sym("u")); }

Expr PointTransformation::a1_squared() const { return d(Tbar, "t"); }
Expr PointTransformation::a1() const { return d(Xbar, "x"); }
Expr PointTransformation::ubar() const { return theta * sym("u") + nu; }

Bindings PointTransformation::forward_bindings() const {
  Bindings b;
  b.bind("t", Tbar).bind("x", Xbar).bind("y", Ybar).bind("u", ubar());
  return b;
}

void validate(const PointTransformation& tr) {
  require_only(tr.Tbar, {"t"}, "t map");
  require_only(tr.Xbar, {"x"}, "x map");
  require_only(tr.Ybar, {"t", "y"}, "y map");
  require_only(tr.theta, {"t", "y"}, "theta");
  require_only(tr.nu, {"t", "y"}, "nu");
  if (!expand(differentiate(tr.Tbar, "t", 2)).is_zero_literal())
    throw std::invalid_argument("t map is not affine: " + render(tr.Tbar));
  if (!expand(differentiate(tr.Xbar, "x", 2)).is_zero_literal())
    throw std::invalid_argument("x map is not affine: " + render(tr.Xbar));
  Expr mismatch = expand(pow(tr.a1(), Expr(2)) - tr.a1_squared());
  if (!mismatch.is_zero_literal() && !is_zero(mismatch).zero)
    throw std::invalid_argument("t and x scalings are inconsistent: dT/dt must equal (dX/dx)^2");
}

EquivalenceVerdict verify_equivalence(const PdeInstance& source, const PointTransformation& tr,
                                      const PdeInstance& target, const ZeroTestConfig& config) {
  EquivalenceVerdict v;
  const Expr u = sym("u");
  const Expr a1sq = tr.a1_squared();
  Bindings to_bar;
  to_bar.bind("u", tr.ubar());
  const Expr F1 = substitute(target.f1, to_bar);
  const Expr F2 = substitute(target.f2, to_bar);

  // Transformation domain: Y_y and theta must not vanish.
  {
    Expr yy = d(tr.Ybar, "y");
    std::vector<Expr> roots{yy, tr.theta};
    Program prog = Program::compile(roots);
    Sampler sampler(prog.variables(), config.sampling, false, config.exclusion);
    Rng rng(config.seed ^ 0x9d0fULL);
    std::vector<double> out(2);
    Program::Options opts;
    for (int i = 0; i < 20; ++i) {
      auto values = sampler.draw(rng);
      if (!sampler.admissible(values) || prog.run(values, out, opts) != EvalStatus::ok) continue;
      if (std::abs(out[0]) < 1e-12 || std::abs(out[1]) < 1e-12) {
        v.domain_error = std::abs(out[0]) < 1e-12 ? "Y_y vanishes" : "theta vanishes";
        return v;
      }
    }
  }

  v.first.name = "Y_t + Y_y f1 = a1^2 F1";
  v.first.residual = d(tr.Ybar, "t") + d(tr.Ybar, "y") * source.f1 - a1sq * F1;
  v.second.name = "theta_t u + nu_t + (theta_y u + nu_y) f1 + theta f2 = a1^2 F2";
  v.second.residual = d(tr.theta, "t") * u + d(tr.nu, "t") + (d(tr.theta, "y") * u + d(tr.nu, "y")) * source.f1 +
                      tr.theta * source.f2 - a1sq * F2;
  ZeroTestConfig cfg = config;
  cfg.sampling.constraints.insert(cfg.sampling.constraints.end(), source.constraints.begin(),
                                  source.constraints.end());
  v.first.verdict = is_zero(v.first.residual, cfg);
  v.second.verdict = is_zero(v.second.residual, cfg);
  v.pass = v.first.verdict.zero && v.second.verdict.zero;
  return v;
}

VectorField pull_back(const VectorField& target_field, const PointTransformation& tr) {
  // Target coefficients live in barred coordinates; compose with the forward map,
  // then invert the triangular Jacobian.
  Bindings forward = tr.forward_bindings();
  const Expr T = substitute(target_field.xi0, forward);
  const Expr X = substitute(target_field.xi1, forward);
  const Expr Y = substitute(target_field.xi2, forward);
  const Expr U = substitute(target_field.eta, forward);
  const Expr u = sym("u");

  VectorField out;
  out.xi0 = T / tr.a1_squared();
  out.xi1 = X / tr.a1();
  out.xi2 = (Y - d(tr.Ybar, "t") * out.xi0) / d(tr.Ybar, "y");
  out.eta = (U - (d(tr.theta, "t") * u + d(tr.nu, "t")) * out.xi0 - (d(tr.theta, "y") * u + d(tr.nu, "y")) * out.xi2) /
            tr.theta;
  return out;
}

}  // namespace kolmo
