#include <benchmark/benchmark.h>

#include "repel/diagnostics.hpp"
#include "repel/optimize.hpp"

using namespace repel;

namespace {

SpectralBasis basis_for(const Torus& torus, const KernelPair& kernel, int n) {
  return build_basis(torus, kernel, spectral_truncation(kernel, torus.periods(), n, 1e-10));
}

void BM_EnergySpectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Torus torus({1.0, 1.0});
  const KernelPair kernel(0.05, 2);
  const SpectralBasis basis = basis_for(torus, kernel, n);
  const Configuration config = uniform_random_configuration(Manifold{torus}, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(energy_spectral(config, basis).value);
  state.SetLabel(std::to_string(basis.modes.size()) + " modes");
}
BENCHMARK(BM_EnergySpectral)->Arg(16)->Arg(64)->Arg(256);

void BM_GradientSpectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Torus torus({1.0, 1.0});
  const KernelPair kernel(0.05, 2);
  const SpectralBasis basis = basis_for(torus, kernel, n);
  const Configuration config = uniform_random_configuration(Manifold{torus}, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_spectral(config, basis));
}
BENCHMARK(BM_GradientSpectral)->Arg(16)->Arg(64)->Arg(256);

void BM_EnergyGeometricTorus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Torus torus({1.0, 1.0});
  const KernelPair kernel(0.05, 2);
  const Configuration config = uniform_random_configuration(Manifold{torus}, n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(energy_geometric(config, Manifold{torus}, kernel, 1e-10).value);
}
BENCHMARK(BM_EnergyGeometricTorus)->Arg(2)->Arg(8);

void BM_PretraceCheck(benchmark::State& state) {
  const Torus torus({1.0, 1.0});
  const KernelPair kernel(0.05, 2);
  const SpectralBasis basis = basis_for(torus, kernel, 8);
  const Configuration config = uniform_random_configuration(Manifold{torus}, 8, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(pretrace_check(config, torus, kernel, basis, 1e-10).residual);
}
BENCHMARK(BM_PretraceCheck);

void BM_ForceBolza(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BolzaSurface surface;
  const Manifold manifold{surface};
  const KernelPair kernel(0.1, 2);
  const Configuration config = uniform_random_configuration(manifold, n, 4);
  for (int i = 0; i < n; ++i)  // warm the element cache across every pair slack
    (void)force_at(config, i, manifold, kernel, 1e-10);
  for (auto _ : state) {
    for (int i = 0; i < n; ++i)
      benchmark::DoNotOptimize(force_at(config, i, manifold, kernel, 1e-10));
  }
}
BENCHMARK(BM_ForceBolza)->Arg(2)->Arg(4);

void BM_GroupEnumeration(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) {
    BolzaSurface surface;  // fresh cache each round
    benchmark::DoNotOptimize(surface.elements_up_to(radius)->size());
  }
}
BENCHMARK(BM_GroupEnumeration)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MinimizeCircle(benchmark::State& state) {
  const Torus circle({1.0});
  const KernelPair kernel(0.05, 1);
  const SpectralBasis basis = basis_for(circle, kernel, 4);
  OptimizeParams params;
  params.max_iters = 500;
  params.grad_tol = 1e-8;
  for (auto _ : state) {
    const Configuration start = uniform_random_configuration(Manifold{circle}, 4, 5);
    benchmark::DoNotOptimize(
        minimize(Manifold{circle}, kernel, &basis, start, params).energy.value);
  }
}
BENCHMARK(BM_MinimizeCircle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
