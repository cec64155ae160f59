// Microbenchmarks for the hot paths: polynomial multiplication, Groebner
// kernels, charge-module extraction, and torus diagnostics.
#include <benchmark/benchmark.h>

#include "stabmod/laurent_gb.hpp"
#include "stabmod/symplectic.hpp"
#include "stabmod/zoo.hpp"

using namespace stabmod;

static Poly dense_poly(RingCtx ctx, int radius) {
  Poly p = Poly::zero(ctx);
  u64 c = 1;
  Exp e(ctx.d, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == ctx.d) {
      p.set_coeff(e, c);
      c = c % (ctx.n - 1) + 1;
      return;
    }
    for (int v = -radius; v <= radius; ++v) {
      e[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return p;
}

static void BM_poly_mul(benchmark::State& state) {
  RingCtx ctx{4, 2};
  Poly a = dense_poly(ctx, static_cast<int>(state.range(0)));
  Poly b = dense_poly(ctx, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_poly_mul)->Arg(2)->Arg(4)->Arg(6);

static void BM_kernel_toric(benchmark::State& state) {
  StabilizerCode c = zoo_code("toric");
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_of_map(c.ctx, c.sigma, 2 * c.m));
}
BENCHMARK(BM_kernel_toric);

static void BM_charge_module_xcube(benchmark::State& state) {
  StabilizerCode c = zoo_code("xcube");
  for (auto _ : state) benchmark::DoNotOptimize(charge_module(c));
}
BENCHMARK(BM_charge_module_xcube);

static void BM_torus_diagnostics(benchmark::State& state) {
  StabilizerCode c = zoo_code("toric");
  int T = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(torus_diagnostics(c, {T, T}));
}
BENCHMARK(BM_torus_diagnostics)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
