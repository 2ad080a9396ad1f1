#include <benchmark/benchmark.h>

#include <vector>

#include "twisted/laguerre.hpp"
#include "twisted/modes.hpp"
#include "twisted/propagator.hpp"

using namespace twisted;

namespace {

BeamGeometry half_waist() {
  const auto g = geometry_from_lab({1.0, 200e3, 1e-9});
  return g.with_waist(0.5 * g.field().w_m);
}

void BM_Laguerre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laguerre(n, 3, x));
    x = x > 50.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_Laguerre)->Arg(4)->Arg(32)->Arg(256);

void BM_NormalizedLaguerreTable(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    normalized_laguerre_functions(2, 7.5, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_NormalizedLaguerreTable)->Arg(129)->Arg(1025);

void BM_CrankNicolsonStep(benchmark::State& state) {
  const auto g = half_waist();
  const auto beam = BeamFamily::general({1, 2, Spin::Up}, g);
  const auto cfg = default_propagator_config(beam, 0.0, 1e-4, static_cast<int>(state.range(0)));
  CrankNicolson cn(ParaxialOperator::from(g, beam.quantum_numbers()), cfg.grid, cfg.dz);
  auto psi = sample(beam, state.range(1) * 0.5 * 3.141592653589793 * g.field().z_m, cfg.grid).values;
  for (auto _ : state) {
    cn.advance(psi);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrankNicolsonStep)->Args({2048, 0})->Args({16384, 0})->Args({16384, 1});

void BM_Decompose(benchmark::State& state) {
  const auto g = half_waist();
  const auto beam = BeamFamily::free_lg({1, 2, Spin::Up}, g);
  const auto grid = RadialGrid::gauss_legendre(8.0 * g.field().w_m_squared / g.w0(), 512);
  const auto psi = sample(beam, 0.0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(psi, g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Decompose)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
