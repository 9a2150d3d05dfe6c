// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include <vector>

#include "ntrmix/eppf.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/ordered_partition.hpp"

namespace {

ntrmix::OrderedPartition alternating_partition(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    if (i % 3 == 0) blocks.push_back({i});
    else blocks[i / 3].push_back(i);
  }
  return ntrmix::OrderedPartition(n, std::move(blocks));
}

void BM_LogProbOrderedBeta(benchmark::State& state) {
  const auto rho = ntrmix::LevyIntensity::homogeneous_beta(1.0);
  const auto m = alternating_partition(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(ntrmix::log_prob_ordered(m, rho));
}
BENCHMARK(BM_LogProbOrderedBeta)->Arg(8)->Arg(32)->Arg(128);

void BM_LogProbOrderedTable(benchmark::State& state) {
  const auto rho = ntrmix::LevyIntensity::homogeneous_beta(1.0);
  const int n = static_cast<int>(state.range(0));
  const ntrmix::KappaPhiTable table(rho, n);
  const auto m = alternating_partition(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(ntrmix::log_prob_ordered(m, table));
}
BENCHMARK(BM_LogProbOrderedTable)->Arg(8)->Arg(32)->Arg(128);

void BM_PredictionWeights(benchmark::State& state) {
  const auto rho = ntrmix::LevyIntensity::poisson_dirichlet(0.3, 1.0);
  const int n = static_cast<int>(state.range(0));
  const ntrmix::KappaPhiTable table(rho, n);
  const auto m = alternating_partition(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(ntrmix::prediction_weights(m, table));
}
BENCHMARK(BM_PredictionWeights)->Arg(8)->Arg(32)->Arg(128);

void BM_PartitionLawSum(benchmark::State& state) {
  const auto rho = ntrmix::LevyIntensity::poisson_dirichlet(0.3, 1.0);
  const int k = static_cast<int>(state.range(0));
  std::vector<std::vector<int>> blocks(k);
  for (int i = 0; i < 2 * k; ++i) blocks[i % k].push_back(i);
  const ntrmix::Partition p(2 * k, std::move(blocks));
  for (auto _ : state)
    benchmark::DoNotOptimize(ntrmix::log_prob_partition(p, rho));
}
BENCHMARK(BM_PartitionLawSum)->DenseRange(4, 8);

}  // namespace

BENCHMARK_MAIN();
