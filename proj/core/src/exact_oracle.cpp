// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/exact_oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "ntrmix/eppf.hpp"
#include "ntrmix/numeric.hpp"
#include "ntrmix/sis_sampler.hpp"

namespace ntrmix {

double PosteriorTable::posterior(std::size_t i) const {
  return std::exp(entries.at(i).log_unnormalized - log_normalizer);
}

double PosteriorTable::posterior_mean_blocks() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    mean += posterior(i) * entries[i].partition.n_blocks();
  return mean;
}

std::vector<double> PosteriorTable::block_count_distribution() const {
  int n = 0;
  for (const Entry& e : entries) n = std::max(n, e.partition.n_items());
  std::vector<double> dist(n + 1, 0.0);
  for (std::size_t i = 0; i < entries.size(); ++i)
    dist[entries[i].partition.n_blocks()] += posterior(i);
  return dist;
}

PosteriorTable exact_posterior(std::span<const double> data,
                               const LevyIntensity& rho,
                               const ConjugateKernel& kernel, int cap) {
  const int n = static_cast<int>(data.size());
  const KappaPhiTable table(rho, n + 1);

  PosteriorTable out;
  for_each_ordered_partition(
      n,
      [&](const OrderedPartition& m) {
        double log_mass = log_prob_ordered(m, table);
        for (const auto& block : m.blocks()) {
          BlockStatistics stats;
          std::vector<double> ys;
          ys.reserve(block.size());
          for (int item : block) {
            stats.add(data[item]);
            ys.push_back(data[item]);
          }
          log_mass += kernel.log_marginal(stats, ys);
        }
        if (!std::isfinite(log_mass))
          throw numeric_error("exact_posterior: non-finite mass");
        out.entries.push_back({m, log_mass});
      },
      cap);

  std::vector<double> masses;
  masses.reserve(out.entries.size());
  for (const auto& e : out.entries) masses.push_back(e.log_unnormalized);
  out.log_normalizer = log_sum_exp(masses);
  return out;
}

PartitionPosterior exact_partition_posterior(std::span<const double> data,
                                             const LevyIntensity& rho,
                                             const ConjugateKernel& kernel,
                                             int cap) {
  const PosteriorTable table = exact_posterior(data, rho, kernel, cap);

  std::map<std::vector<int>, std::pair<Partition, double>> grouped;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    Partition p = forget_order(table.entries[i].partition);
    auto key = p.restricted_growth_string();
    auto [it, inserted] =
        grouped.try_emplace(std::move(key), std::move(p), 0.0);
    it->second.second += table.posterior(i);
  }

  PartitionPosterior out;
  out.entries.reserve(grouped.size());
  for (auto& [key, entry] : grouped) out.entries.push_back(std::move(entry));
  return out;
}

std::vector<double> exact_predictive_density(std::span<const double> data,
                                             const LevyIntensity& rho,
                                             const ConjugateKernel& kernel,
                                             std::span<const double> grid,
                                             int cap) {
  if (data.empty()) {
    std::vector<double> density(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g)
      density[g] = std::exp(kernel.log_marginal_single(grid[g]));
    return density;
  }

  const KappaPhiTable kp(rho, static_cast<int>(data.size()) + 1);
  const PosteriorTable table = exact_posterior(data, rho, kernel, cap);

  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const double weight = table.posterior(i);
    const std::vector<double> f = predictive_density(
        table.entries[i].partition, data, grid, kp, kernel);
    for (std::size_t g = 0; g < grid.size(); ++g) density[g] += weight * f[g];
  }
  return density;
}

}  // namespace ntrmix
