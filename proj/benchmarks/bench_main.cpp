#include <benchmark/benchmark.h>

#include "fisher/cyclic_band.hpp"
#include "fisher/deft.hpp"
#include "fisher/fim.hpp"
#include "fisher/ising.hpp"
#include "fisher/kde.hpp"
#include "fisher/normal.hpp"

namespace {

using namespace fisher;

void BM_DeftFit(benchmark::State& state) {
  const auto samples = normal_sample({0.0, 1.0}, static_cast<std::size_t>(state.range(0)), 11);
  DeftOptions opts;
  opts.num_points = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(deft_fit(samples, opts));
}
BENCHMARK(BM_DeftFit)->Args({1000, 100})->Args({10000, 100})->Args({10000, 200})->Unit(benchmark::kMillisecond);

void BM_KdeFit(benchmark::State& state) {
  const auto samples = normal_sample({0.0, 1.0}, static_cast<std::size_t>(state.range(0)), 11);
  const GridSpec grid = make_grid(samples, BoxPolicy::automatic(), 100);
  for (auto _ : state) benchmark::DoNotOptimize(kde_fit(samples, grid, KdeOptions::scott()));
}
BENCHMARK(BM_KdeFit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CyclicBandCholesky(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CyclicBandMatrix a(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    a.band(0, i) = 21.0;
    a.band(1, i) = -15.0;
    a.band(2, i) = 6.0;
    a.band(3, i) = -1.0;
  }
  std::vector<double> rhs(n, 1.0);
  for (auto _ : state) {
    CyclicBandCholesky chol(a);
    benchmark::DoNotOptimize(chol.solve(rhs));
  }
}
BENCHMARK(BM_CyclicBandCholesky)->Arg(100)->Arg(1000);

void BM_MetropolisSweep(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  IsingState s(L, 5);
  for (auto _ : state) {
    metropolis_sweep(s, 2.269);
    benchmark::DoNotOptimize(s.energy());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(L * L));
}
BENCHMARK(BM_MetropolisSweep)->Arg(16)->Arg(25);

void BM_FimEntry(benchmark::State& state) {
  const GridSpec grid = make_grid_spec(-12.0, 12.0, 400);
  auto pdf = [](double s) { return [s](double x) { return normal_pdf({0.0, s}, x); }; };
  const Stencil stencil(ParameterPoint{{"sigma", 1.0}}, analytic_density(grid, pdf(1.0)),
                        {StencilArm{"sigma", 0.2, analytic_density(grid, pdf(1.2)), analytic_density(grid, pdf(0.8))}},
                        10000);
  const FimOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(fim_entry(stencil, "sigma", "sigma", opts));
}
BENCHMARK(BM_FimEntry);

}  // namespace

BENCHMARK_MAIN();
