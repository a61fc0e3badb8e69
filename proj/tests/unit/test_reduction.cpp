#include "kolmo/catalog/catalog.hpp"
#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/reduction/reduction.hpp"
#include "kolmo/symmetry/pde.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kolmo;

namespace {

bool zero(const Expr& e) { return is_zero(e).zero; }

// u_t - u_xx - u*u_y = 0
PdeInstance burgers_type() { return PdeInstance::make("u", "0", -1); }

const Catalog& catalog() {
  static const Catalog c = load_catalog(default_catalog_path());
  return c;
}

}  // namespace

TEST(Invariants, TranslationCombination) {
  auto X = algebra_element(catalog().algebra, "X4 + X6");
  EXPECT_TRUE(verify_invariants(X, {parse("t"), parse("y - x")}).pass);
  auto bad = verify_invariants(X, {parse("t"), parse("x")});
  EXPECT_FALSE(bad.pass);
  ASSERT_EQ(bad.per_invariant.size(), 2u);
  EXPECT_TRUE(bad.per_invariant[0].zero);
  EXPECT_FALSE(bad.per_invariant[1].zero);
}

TEST(Invariants, AnsatzSurface) {
  const auto& a = catalog().algebra;
  auto ans = Ansatz::parse({"t"}, "-y/t + exp(x)*phi(w1)");
  EXPECT_TRUE(ansatz_invariant(algebra_element(a, "X3 + X6"), ans).zero);
  EXPECT_TRUE(ansatz_invariant(algebra_element(a, "X5"), ans).zero);
  EXPECT_FALSE(ansatz_invariant(algebra_element(a, "X6"), ans).zero);
}

TEST(Reduce, BurgersInTwoVariables) {
  auto ans = Ansatz::parse({"t", "y - x"}, "phi(w1, w2)");
  auto r = reduce(burgers_type(), ans);
  auto m = match_reduced(r.reduced, parse("phi_w1 - phi_w2w2 - phi*phi_w2"));
  EXPECT_TRUE(m.pass);
  EXPECT_TRUE(m.constant);
  EXPECT_DOUBLE_EQ(std::abs(m.lambda_value), 1.0);

  // heat equation is a different reduction
  EXPECT_FALSE(match_reduced(r.reduced, parse("phi_w1 - phi_w2w2")).pass);
}

// phi = 2/w2 solves phi_w1 = phi_w2w2 + phi*phi_w2 by hand, so u = 2/(y - x) solves the equation
TEST(Reduce, BurgersStationarySolution) {
  auto ans = Ansatz::parse({"t", "y - x"}, "phi(w1, w2)");
  auto r = reduce(burgers_type(), ans);
  EXPECT_TRUE(zero(reduced_on(r.reduced, parse("2/w2"))));
  Expr u = lift(ans, parse("2/w2"));
  EXPECT_TRUE(zero(burgers_type().residual_of(u)));
  EXPECT_TRUE(zero(u - parse("2/(y - x)")));
}

TEST(Match, ScalarMultiples) {
  Expr e = parse("phi_w1w1 - phi_w1 + phi^2");
  auto two = match_reduced(2 * e, e);
  EXPECT_TRUE(two.pass);
  EXPECT_TRUE(two.constant);
  EXPECT_DOUBLE_EQ(two.lambda_value, 2.0);

  auto var = match_reduced(parse("w1") * e, e);
  EXPECT_TRUE(var.pass);
  EXPECT_FALSE(var.constant);

  EXPECT_FALSE(match_reduced(e + parse("phi"), e).pass);
}

TEST(Reduce, ScalingOrientation) {
  auto r = reduce(burgers_type(), Ansatz::parse({"t - x"}, "y*phi(w1)"));
  EXPECT_TRUE(match_reduced(r.reduced, parse("phi_w1w1 - phi_w1 + phi^2")).pass);
  auto flipped = reduce(burgers_type(), Ansatz::parse({"x - t"}, "y*phi(w1)"));
  EXPECT_TRUE(match_reduced(flipped.reduced, parse("phi_w1w1 + phi_w1 + phi^2")).pass);
}

TEST(Reduce, RejectsNonInvariantAnsatz) {
  EXPECT_THROW((void)reduce(burgers_type(), Ansatz::parse({"x"}, "t*phi(w1)")), ReductionError);
}

TEST(Reduce, OrdinaryEquationsWithLifts) {
  auto ans = Ansatz::parse({"t"}, "(x - y)/t + phi(w1)");
  auto r = reduce(burgers_type(), ans);
  EXPECT_TRUE(match_reduced(r.reduced, parse("w1*phi_w1 + phi")).pass);
  EXPECT_TRUE(zero(reduced_on(r.reduced, parse("C/w1"))));
  EXPECT_FALSE(zero(reduced_on(r.reduced, parse("C"))));
  EXPECT_TRUE(zero(burgers_type().residual_of(lift(ans, parse("C/w1")))));
}

// direct substitution: the additive constant only survives with C = 0
TEST(Reduce, AlphaFamilyConstant) {
  auto pde = burgers_type();
  EXPECT_TRUE(zero(pde.residual_of(parse("(x - alpha*y)/(alpha*t - 1)"))));
  EXPECT_FALSE(zero(pde.residual_of(parse("(x - alpha*y)/(alpha*t - 1) + C"))));
  EXPECT_TRUE(zero(pde.residual_of(parse("(x - alpha*y + C)/(alpha*t - 1)"))));

  auto ans = Ansatz::parse({"t"}, "(x - alpha*y)/(alpha*t - 1) + phi(w1)", {"alpha != 0"});
  auto r = reduce(pde, ans);
  EXPECT_FALSE(match_reduced(r.reduced, parse("phi_w1")).pass);
  EXPECT_TRUE(match_reduced(r.reduced, parse("phi_w1 + alpha*phi/(alpha*w1 - 1)")).pass);
}

TEST(Solutions, ResidualAndDomain) {
  auto pde = burgers_type();
  auto front = solution_residual(pde, parse("(x + y)/(1 - t)"));
  EXPECT_TRUE(front.zero);
  EXPECT_LT(front.max_abs, 1e-9);
  EXPECT_TRUE(solution_residual(pde, parse("7")).zero);

  auto off = solution_residual(pde, parse("(x + 2*y)/(1 - t)"));
  EXPECT_FALSE(off.zero);
  ASSERT_TRUE(off.witness.has_value());

  auto wave = solution_residual(pde, parse("2/(beta*(beta*y + t - x + C1)) + 1/beta"),
                                {parse_constraint("beta > 0")});
  EXPECT_TRUE(wave.zero);
}

TEST(Solutions, PhiFromSolution) {
  auto ans = Ansatz::parse({"beta*y + t - x"}, "phi(w1)");
  auto phi = phi_from_solution(ans, parse("2/(beta*(beta*y + t - x + C1)) + 1/beta"));
  ASSERT_TRUE(phi.has_value());
  EXPECT_TRUE(zero(*phi - parse("2/(beta*(w1 + C1)) + 1/beta")));
  auto r = reduce(burgers_type(), ans);
  EXPECT_TRUE(zero(reduced_on(r.reduced, *phi)));

  EXPECT_FALSE(phi_from_solution(Ansatz::parse({"t"}, "y + phi(w1)"), parse("y")).has_value());
}
