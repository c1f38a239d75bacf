#include "tflab/kernels.hpp"
#include "tflab/sampling.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace tflab;

std::vector<cplx> random_values(std::size_t n, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<cplx> v(n);
  for (auto& x : v) x = rng.complex_normal();
  return v;
}

FiniteAbelianGroup group_of(const benchmark::State& state) {
  return FiniteAbelianGroup({static_cast<std::int64_t>(state.range(0))});
}

template <auto Kernel>
void bm_stft(benchmark::State& state) {
  const auto g = group_of(state);
  const auto f = random_values(g.order(), 1);
  const auto w = random_values(g.order(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, f, w));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void bm_wigner(benchmark::State& state) {
  const auto g = group_of(state);
  const auto f = random_values(g.order(), 1);
  const auto h = random_values(g.order(), 2);
  const auto tau = GroupEndomorphism::scalar(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, f, h, tau));
}

template <auto Kernel>
void bm_weyl(benchmark::State& state) {
  const auto g = group_of(state);
  const auto phi = random_values(g.order() * g.order(), 3);
  const auto tau = GroupEndomorphism::scalar(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, phi, tau));
}

}  // namespace

BENCHMARK(bm_stft<tflab::serial::stft>)->Name("stft/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_stft<tflab::parallel::stft>)->Name("stft/parallel")->RangeMultiplier(2)->Range(16, 256)->UseRealTime();
BENCHMARK(bm_wigner<tflab::serial::wigner>)->Name("wigner/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_wigner<tflab::parallel::wigner>)->Name("wigner/parallel")->RangeMultiplier(2)->Range(16, 256)->UseRealTime();
BENCHMARK(bm_weyl<tflab::serial::weyl>)->Name("weyl/serial")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_weyl<tflab::parallel::weyl>)->Name("weyl/parallel")->RangeMultiplier(2)->Range(8, 64)->UseRealTime();

BENCHMARK_MAIN();
