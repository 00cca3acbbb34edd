// Microbenchmarks for the hot paths: spectral transforms, the Strang
// splitting step, dense spectrum extraction, and the kernel LU solve.

#include <benchmark/benchmark.h>

#include <memory>

#include "shearmix/evolution.hpp"
#include "shearmix/kernel.hpp"
#include "shearmix/operators.hpp"
#include "shearmix/profile.hpp"
#include "shearmix/spectral.hpp"

namespace {

using namespace shearmix;

SpectralField test_field(std::shared_ptr<const Grid> grid) {
  return SpectralField::from_function(
      grid, [](double y) { return cplx(std::sin(y) + 0.3 * std::cos(3 * y),
                                       0.2 * std::sin(2 * y)); });
}

void BM_transform_roundtrip(benchmark::State& state) {
  auto grid = std::make_shared<Grid>(static_cast<int>(state.range(0)));
  SpectralField f = test_field(grid);
  for (auto _ : state) {
    SpectralField g = f.derivative(0);  // forward + inverse transform pair
    benchmark::DoNotOptimize(g);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_transform_roundtrip)->RangeMultiplier(2)->Range(64, 2048)
    ->Complexity(benchmark::oNLogN);

void BM_strang_step(benchmark::State& state) {
  auto grid = std::make_shared<Grid>(static_cast<int>(state.range(0)));
  ShearProfile profile = make_profile("sinusoidal");
  SpectralField f = test_field(grid);
  for (auto _ : state) {
    f = strang_step(f, profile, 1e-4, 1, 0.01);
    benchmark::DoNotOptimize(f);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_strang_step)->RangeMultiplier(2)->Range(64, 2048)
    ->Complexity(benchmark::oNLogN);

void BM_dense_spectrum(benchmark::State& state) {
  auto grid = std::make_shared<Grid>(static_cast<int>(state.range(0)));
  ShearProfile profile = make_profile("sinusoidal");
  DiscreteOperator L = build_L(profile, 1e-2, grid);
  for (auto _ : state) {
    auto pairs = dense_spectrum(L);
    benchmark::DoNotOptimize(pairs);
  }
}
BENCHMARK(BM_dense_spectrum)->RangeMultiplier(2)->Range(64, 256)
    ->Unit(benchmark::kMillisecond);

void BM_shift_invert(benchmark::State& state) {
  auto grid = std::make_shared<Grid>(static_cast<int>(state.range(0)));
  ShearProfile profile = make_profile("sinusoidal");
  double eps = 1e-3;
  DiscreteOperator L = build_L(profile, eps, grid);
  auto cps = find_critical_points(profile);
  cplx seed = asymptotic_seed(profile, cps[0], 0, eps);
  for (auto _ : state) {
    EigenPair p = shift_invert_eigen(L, seed);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_shift_invert)->RangeMultiplier(2)->Range(128, 512)
    ->Unit(benchmark::kMillisecond);

void BM_kernel_slice(benchmark::State& state) {
  auto grid = std::make_shared<Grid>(static_cast<int>(state.range(0)));
  ShearProfile profile = make_profile("sinusoidal");
  for (auto _ : state) {
    KernelSlice slice =
        solve_kernel(profile, 1e-3, 0.5, 0.5, 0.1, 1, grid->n() / 3, grid);
    benchmark::DoNotOptimize(slice);
  }
}
BENCHMARK(BM_kernel_slice)->RangeMultiplier(2)->Range(128, 512)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
