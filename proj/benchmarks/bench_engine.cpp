#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/zero_test.hpp"
#include "kolmo/numeric/cole_hopf.hpp"
#include "kolmo/numeric/fd_solver.hpp"
#include "kolmo/reduction/reduction.hpp"
#include "kolmo/symmetry/prolongation.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace kolmo;

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse("sqrt(-1 - 2*beta*C)/beta*tan(-sqrt(-1 - 2*beta*C)/2*(beta*y + t - x) + C1) + 1/beta"));
  }
}
BENCHMARK(BM_Parse);

static void BM_Differentiate(benchmark::State& state) {
  Expr e = parse("-2*sqrt(1 + 2*beta*C)/(beta*(C1*exp(-sqrt(1 + 2*beta*C)*(beta*y + t - x)) - 1))");
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(e, "x", 2));
}
BENCHMARK(BM_Differentiate);

static void BM_IsZeroIdentity(benchmark::State& state) {
  Expr e = parse("sin(x + y)^2 + cos(x + y)^2 - 1 + exp(ln(u)) - u");
  ZeroTestConfig cfg;
  cfg.points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_zero(e, cfg));
}
BENCHMARK(BM_IsZeroIdentity)->Arg(10)->Arg(50)->Arg(200);

static void BM_InvarianceResidual(benchmark::State& state) {
  auto pde = PdeInstance::make("u^m", "eps1*u^n");
  auto X = VectorField::parse("(n - 1)*t*Dt + 1/2*(n - 1)*x*Dx + (n - m - 1)*y*Dy - u*Du");
  for (auto _ : state) benchmark::DoNotOptimize(invariance_residual(X, pde));
}
BENCHMARK(BM_InvarianceResidual);

static void BM_InvarianceVerdict(benchmark::State& state) {
  auto pde = PdeInstance::make("u", "0", -1);
  auto X = VectorField::parse("t*Dt + 1/2*x*Dx - u*Du");
  for (auto _ : state) benchmark::DoNotOptimize(is_zero(invariance_residual(X, pde)));
}
BENCHMARK(BM_InvarianceVerdict);

static void BM_Reduce(benchmark::State& state) {
  auto pde = PdeInstance::make("u", "0", -1);
  auto ans = Ansatz::parse({"t", "y - x"}, "phi(w1, w2)");
  for (auto _ : state) benchmark::DoNotOptimize(reduce(pde, ans));
}
BENCHMARK(BM_Reduce);

static void BM_FdSolve(benchmark::State& state) {
  numeric::SolverConfig c;
  c.pde = PdeInstance::make("u", "0", -1);
  c.nx = c.ny = static_cast<int>(state.range(0));
  c.initial = parse("x + y");
  c.boundary_values = parse("(x + y)/(1 - t)");
  for (auto _ : state) benchmark::DoNotOptimize(numeric::fd_solve(c));
}
BENCHMARK(BM_FdSolve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ColeHopfPoint(benchmark::State& state) {
  numeric::ColeHopf ch([](double z) { return std::exp(-z * z); });
  double z = -3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ch(0.5, z));
    z = z > 3 ? -3 : z + 0.1;
  }
}
BENCHMARK(BM_ColeHopfPoint)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
