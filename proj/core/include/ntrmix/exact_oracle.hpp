// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ntrmix/kernels.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/ordered_partition.hpp"

namespace ntrmix {

/// Full posterior over ordered partitions of a small dataset, computed by
/// enumeration. Ground truth for the Monte Carlo tests.
struct PosteriorTable {
  struct Entry {
    OrderedPartition partition;
    double log_unnormalized;
  };
  std::vector<Entry> entries;
  double log_normalizer = 0.0;

  double posterior(std::size_t i) const;
  double posterior_mean_blocks() const;
  /// Posterior probability of each block count, indexed 1..n.
  std::vector<double> block_count_distribution() const;
};

/// Every ordered partition m weighted by pi(m) times the product of its
/// block marginals, normalized over the table.
PosteriorTable exact_posterior(std::span<const double> data,
                               const LevyIntensity& rho,
                               const ConjugateKernel& kernel,
                               int cap = kDefaultEnumerationCap);

/// The ordered table aggregated over rank assignments.
struct PartitionPosterior {
  std::vector<std::pair<Partition, double>> entries;  // (p, posterior prob)
};

PartitionPosterior exact_partition_posterior(std::span<const double> data,
                                             const LevyIntensity& rho,
                                             const ConjugateKernel& kernel,
                                             int cap = kDefaultEnumerationCap);

/// Exact predictive density on a grid: the table-weighted average of the
/// per-partition predictive densities. For empty data this is the prior
/// marginal density.
std::vector<double> exact_predictive_density(std::span<const double> data,
                                             const LevyIntensity& rho,
                                             const ConjugateKernel& kernel,
                                             std::span<const double> grid,
                                             int cap = kDefaultEnumerationCap);

}  // namespace ntrmix
