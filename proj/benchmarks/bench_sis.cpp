// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include <vector>

#include "ntrmix/exact_oracle.hpp"
#include "ntrmix/kernels.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/rng.hpp"
#include "ntrmix/sis_sampler.hpp"

namespace {

std::vector<double> synthetic_data(int n) {
  ntrmix::Rng rng(5);
  std::vector<double> data(n);
  for (int i = 0; i < n; ++i)
    data[i] = rng.normal() + (i % 2 == 0 ? -1.5 : 1.5);
  return data;
}

void BM_SISReplicate(benchmark::State& state) {
  const auto data = synthetic_data(static_cast<int>(state.range(0)));
  const auto rho = ntrmix::LevyIntensity::homogeneous_beta(1.0);
  const ntrmix::NormalNormalModel kernel(1.0, 1.0);
  ntrmix::SISOptions options;
  options.replicates = 100;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    options.seed = seed++;
    benchmark::DoNotOptimize(ntrmix::run_sis(data, rho, kernel, options));
  }
  state.SetItemsProcessed(state.iterations() * options.replicates);
}
BENCHMARK(BM_SISReplicate)->Arg(10)->Arg(25)->Arg(50);

void BM_StickBreaking(benchmark::State& state) {
  ntrmix::Rng rng(17);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ntrmix::stick_breaking_sample(0.5, 0.5, static_cast<int>(state.range(0)), rng));
}
BENCHMARK(BM_StickBreaking)->Arg(10)->Arg(100);

void BM_ExactPosterior(benchmark::State& state) {
  const auto data = synthetic_data(static_cast<int>(state.range(0)));
  const auto rho = ntrmix::LevyIntensity::homogeneous_beta(1.0);
  const ntrmix::NormalNormalModel kernel(1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ntrmix::exact_posterior(data, rho, kernel));
}
BENCHMARK(BM_ExactPosterior)->DenseRange(4, 7);

}  // namespace

BENCHMARK_MAIN();
