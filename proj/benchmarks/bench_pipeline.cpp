#include <benchmark/benchmark.h>

#include "mod1/denoise.hpp"
#include "mod1/signals.hpp"
#include "mod1/trs.hpp"
#include "mod1/unwrap.hpp"

namespace {

using namespace mod1;

SampledInstance make_instance(int n) {
  const SignalSpec& f1 = signal_by_name("f1");
  return add_noise(sample_clean(f1, UniformGrid::make(n)),
                   {NoiseModel::uniform, 0.15, 7});
}

void LaplacianSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix lap = laplacian(build_graph(n, 2));
  for (auto _ : state) {
    Spectrum s = spectrum(lap);
    benchmark::DoNotOptimize(s.eigenvalues);
  }
  state.SetComplexityN(n);
}
BENCHMARK(LaplacianSpectrum)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void SphereSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SampledInstance inst = make_instance(n);
  const Matrix lap = laplacian(build_graph(n, 2));
  const Spectrum spec = spectrum(lap);
  const Vector z = embed(inst.noisy_mod1).v;
  const BlockLaplacian h{0.1, lap};
  for (auto _ : state) {
    TrsSolution sol = solve_trs_equality(h, spec, z, n);
    benchmark::DoNotOptimize(sol.g);
  }
  state.SetComplexityN(n);
}
BENCHMARK(SphereSolve)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void DenoisePipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SampledInstance inst = make_instance(n);
  const Denoiser ctx(n, 2);
  for (auto _ : state) {
    DenoiseResult r = ctx.denoise(inst.noisy_mod1, 0.1);
    UnwrapResult u = ols_unwrap(r.denoised, ctx.graph(), 0.5);
    benchmark::DoNotOptimize(u.samples);
  }
  state.SetComplexityN(n);
}
BENCHMARK(DenoisePipeline)->RangeMultiplier(2)->Range(128, 512)->Complexity();

void LeastSquaresUnwrap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SampledInstance inst = make_instance(n);
  const NeighborGraph g = build_graph(n, 2);
  for (auto _ : state) {
    UnwrapResult u = ols_unwrap(inst.noisy_mod1, g, 0.5);
    benchmark::DoNotOptimize(u.samples);
  }
  state.SetComplexityN(n);
}
BENCHMARK(LeastSquaresUnwrap)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
