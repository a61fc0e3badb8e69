#include "kolmo/catalog/catalog.hpp"
#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/zero_test.hpp"
#include "kolmo/symmetry/algebra.hpp"
#include "kolmo/symmetry/pde.hpp"
#include "kolmo/symmetry/prolongation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kolmo;

namespace {

bool zero(const Expr& e) { return is_zero(e).zero; }

const Catalog& catalog() {
  static const Catalog c = load_catalog(default_catalog_path());
  return c;
}

// u(t, x, y) with the map applied to its arguments
Expr compose(const Expr& u, const Expr& t, const Expr& x, const Expr& y) {
  Bindings b;
  b.bind("t", t).bind("x", x).bind("y", y);
  return substitute(u, b);
}

Expr random_polynomial(std::mt19937_64& rng) {
  static const char* vars[] = {"t", "x", "y"};
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), which(0, 2);
  Expr p = 0;
  for (int k = 0; k < 4; ++k) {
    Expr m = coef(rng);
    for (int d = deg(rng); d > 0; --d) m = m * sym(vars[which(rng)]);
    p += m;
  }
  return p;
}

}  // namespace

TEST(Prolongation, KnownCoefficients) {
  // characteristic 1 - t*u_y, worked out by hand
  auto p = prolong(VectorField::parse("t*Dy + Du"));
  EXPECT_TRUE(zero(p.eta_t + parse("u_y")));
  EXPECT_TRUE(zero(p.eta_x));
  EXPECT_TRUE(zero(p.eta_y));
  EXPECT_TRUE(zero(p.eta_xx));

  auto s = prolong(VectorField::parse("t*Dt + 1/2*x*Dx - u*Du"));
  EXPECT_TRUE(zero(s.eta_t + parse("2*u_t")));
  EXPECT_TRUE(zero(s.eta_x + parse("3/2*u_x")));
  EXPECT_TRUE(zero(s.eta_xx + parse("2*u_xx")));
}

TEST(Prolongation, TotalDerivativeOrderCap) {
  EXPECT_TRUE(zero(total_derivative(parse("u*u_x"), 'x') - parse("u_x^2 + u*u_xx")));
  EXPECT_THROW((void)total_derivative(parse("u_xxx"), 'x'), JetOrderError);
}

TEST(Invariance, KernelForArbitraryNonlinearities) {
  auto pde = PdeInstance::opaque();
  for (const char* f : {"Dt", "Dx", "Dy"}) EXPECT_TRUE(zero(invariance_residual(VectorField::parse(f), pde))) << f;
  EXPECT_FALSE(zero(invariance_residual(VectorField::parse("x*Dx"), pde)));
}

TEST(Invariance, TranslationsForRandomPolynomialNonlinearities) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    PdeInstance pde;
    pde.f1 = parse("u^2") + substitute(random_polynomial(rng), "t", sym("u"));
    pde.f2 = substitute(random_polynomial(rng), "x", sym("u"));
    pde.f1 = substitute(pde.f1, Bindings{}.bind("x", 0).bind("y", 0));
    pde.f2 = substitute(pde.f2, Bindings{}.bind("t", 0).bind("y", 0));
    for (const char* f : {"Dt", "Dx", "Dy"}) EXPECT_TRUE(zero(invariance_residual(VectorField::parse(f), pde)));
    EXPECT_FALSE(zero(invariance_residual(VectorField::parse("t*Dt + x*Dx"), pde)));
  }
}

TEST(Invariance, ScalingOfBurgersType) {
  auto pde = PdeInstance::make("u", "0", -1);
  EXPECT_TRUE(zero(invariance_residual(VectorField::parse("t*Dt + 1/2*x*Dx - u*Du"), pde)));
  EXPECT_TRUE(zero(invariance_residual(VectorField::parse("t*Dy - Du"), pde)));
  EXPECT_FALSE(zero(invariance_residual(VectorField::parse("t*Dy + Du"), pde)));
  for (const auto& r : determining_residuals(VectorField::parse("y*Dy + u*Du"), pde)) {
    EXPECT_TRUE(zero(r.residual)) << r.label;
  }
}

// a symmetry maps solutions to solutions: check with the flows written out by hand
TEST(Invariance, FlowsMapSolutionsToSolutions) {
  auto pde = PdeInstance::make("u", "0", -1);
  Expr u = parse("(x + y)/(1 - t)");
  ASSERT_TRUE(zero(pde.residual_of(u)));
  Expr t = sym("t"), x = sym("x"), y = sym("y");

  // X5: (t, y + e*t, u - e) with e = 3
  Expr g5 = compose(u, t, x, y - 3 * t) - 3;
  EXPECT_TRUE(zero(pde.residual_of(g5)));
  // X1 with exp(e) = 4
  Expr g1 = compose(u, t / 4, x / 2, y) / 4;
  EXPECT_TRUE(zero(pde.residual_of(g1)));
  // X3 with exp(e) = 2
  Expr g3 = 2 * compose(u, t, x, y / 2);
  EXPECT_TRUE(zero(pde.residual_of(g3)));
  // not a symmetry
  Expr bad = compose(u, t, x, 2 * y);
  EXPECT_FALSE(zero(pde.residual_of(bad)));
}

TEST(Algebra, HandComputedCommutators) {
  const auto basis = basis_fields(catalog().algebra);
  ASSERT_EQ(basis.size(), 6u);
  const auto& X1 = basis[0];
  const auto& X2 = basis[1];
  const auto& X3 = basis[2];
  const auto& X4 = basis[3];
  const auto& X5 = basis[4];
  auto same = [](const VectorField& a, const VectorField& b) { return zero((a - b).to_expr()); };
  EXPECT_TRUE(same(commutator(X1, X2), Expr(-1) * X2));
  EXPECT_TRUE(same(commutator(X2, X5), X4));
  EXPECT_TRUE(same(commutator(X1, X5), X5));
  EXPECT_TRUE(same(commutator(X3, X5), Expr(-1) * X5));
  EXPECT_TRUE(commutator(X3, X2).is_zero_field());
}

TEST(Algebra, Antisymmetry) {
  const auto basis = basis_fields(catalog().algebra);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto s = commutator(basis[i], basis[j]) + commutator(basis[j], basis[i]);
      EXPECT_TRUE(zero(s.to_expr())) << i << "," << j;
    }
  }
}

TEST(Algebra, Coordinates) {
  const auto basis = basis_fields(catalog().algebra);
  auto c = coordinates(VectorField::parse("t*Dy - Du + 2*Dx"), basis);
  EXPECT_EQ(format_combination(c, {"X1", "X2", "X3", "X4", "X5", "X6"}), "X5 + 2*X6");
  EXPECT_THROW((void)coordinates(VectorField::parse("x*Dy"), basis), NotInSpanError);
}

TEST(Algebra, Subalgebras) {
  const auto& a = catalog().algebra;
  NamedBasis ambient;
  for (const auto& b : a.basis) ambient.names.push_back(b.name);
  ambient.fields = basis_fields(a);

  auto v = is_subalgebra({algebra_element(a, "X1 + 2*X3"), algebra_element(a, "X2 + X5")}, ambient);
  EXPECT_TRUE(v.closed);
  EXPECT_EQ(v.dimension, 2u);
  // [g1, g2] = -g2
  ASSERT_EQ(v.structure.size(), 2u);
  EXPECT_EQ(v.structure[0][1], (std::vector<Rational>{0, -1}));

  auto w = is_subalgebra({algebra_element(a, "X2"), algebra_element(a, "X5")}, ambient);
  EXPECT_FALSE(w.closed);
  EXPECT_EQ(format_combination(w.defect, ambient.names), "X4");
}

TEST(Algebra, ExactLinearAlgebra) {
  RationalMatrix m{{1, 2}, {2, 4}};
  EXPECT_EQ(rank_exact(m), 1u);
  EXPECT_FALSE(solve_exact(m, {1, 3}).has_value());
  auto s = solve_exact({{2, 1}, {1, 3}}, {3, 5});
  ASSERT_TRUE(s);
  EXPECT_EQ((*s)[0], Rational(4, 5));
  EXPECT_EQ((*s)[1], Rational(7, 5));
}

TEST(VectorFieldTest, ValidationAndParsing) {
  EXPECT_THROW((void)VectorField::parse("u_x*Dx"), std::invalid_argument);
  EXPECT_THROW((void)PdeInstance::make("3", "u"), std::invalid_argument);
  auto X = VectorField::parse("t*Dt + 1/2*x*Dx - u*Du");
  EXPECT_EQ(X.xi1, parse("x/2"));
  EXPECT_EQ(X.apply(parse("x^2*u")), Expr(0));
  EXPECT_EQ(X.apply(parse("t*u")), Expr(0));
}
