// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/numeric.hpp"
#include "ntrmix/ordered_partition.hpp"

namespace ntrmix {

inline constexpr int kDefaultPermutationCap = 9;
inline constexpr double kWeightSumTolerance = 1e-8;

/// One-step transition law of the ordered seating process. join[j] is the
/// probability that the next customer joins the rank-j block; new_block[j]
/// is the probability that it opens a new block inserted at rank j (every
/// existing block of rank >= j moves down one rank). Entries sum to one.
struct PredictionWeights {
  std::vector<double> join;       // size k
  std::vector<double> new_block;  // size k + 1

  double total() const {
    return std::accumulate(join.begin(), join.end(), 0.0) +
           std::accumulate(new_block.begin(), new_block.end(), 0.0);
  }
};

struct LogPredictionWeights {
  std::vector<double> join;
  std::vector<double> new_block;
};

/// log probability of an ordered partition:
///   sum_j [ log kappa(d_j, r_{j-1}) - log phi(r_j) ]
template <KappaPhiProvider R>
double log_prob_ordered_sizes(std::span<const int> block_sizes, const R& rho) {
  double log_prob = 0.0;
  int r_prev = 0;
  for (int d : block_sizes) {
    log_prob += rho.log_kappa(d, r_prev) - rho.log_phi(r_prev + d);
    r_prev += d;
  }
  return log_prob;
}

template <KappaPhiProvider R>
double log_prob_ordered(const OrderedPartition& m, const R& rho) {
  const std::vector<int> sizes = m.block_sizes();
  return log_prob_ordered_sizes(sizes, rho);
}

/// log probability of an unordered partition: log-sum-exp over all k!
/// rank assignments of its blocks. Refuses when k exceeds the cap.
template <KappaPhiProvider R>
double log_prob_partition(const Partition& p, const R& rho,
                          int permutation_cap = kDefaultPermutationCap) {
  const int k = p.n_blocks();
  if (k > permutation_cap)
    throw std::invalid_argument(
        "log_prob_partition: block count exceeds permutation cap");
  if (k == 0) return 0.0;

  std::vector<int> sizes = p.block_sizes();
  std::sort(sizes.begin(), sizes.end());
  std::vector<double> terms;
  do {
    terms.push_back(log_prob_ordered_sizes(sizes, rho));
  } while (std::next_permutation(sizes.begin(), sizes.end()));

  // next_permutation over the multiset of sizes visits each distinct
  // arrangement once; duplicate sizes need a multiplicity factor equal to
  // the product of factorials of their repeat counts.
  double log_multiplicity = 0.0;
  std::vector<int> sorted = p.block_sizes();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    for (std::size_t c = 2; c <= j - i; ++c)
      log_multiplicity += std::log(static_cast<double>(c));
    i = j;
  }
  return log_sum_exp(terms) + log_multiplicity;
}

/// Log-space prediction weights for the state with the given ordered block
/// sizes. No normalization guard; prefer prediction_weights unless working
/// deep in a sampler loop.
template <KappaPhiProvider R>
LogPredictionWeights log_prediction_weights_sizes(
    std::span<const int> block_sizes, const R& rho) {
  const int k = static_cast<int>(block_sizes.size());

  std::vector<int> r_before(k + 1, 0);  // r_{j-1}: at-risk count before block j
  for (int j = 0; j < k; ++j) r_before[j + 1] = r_before[j] + block_sizes[j];

  // Suffix sums over l = j..k-1 of the kappa and phi log-ratios that every
  // weight formula shares.
  std::vector<double> kappa_ratio_suffix(k + 1, 0.0);
  std::vector<double> phi_ratio_suffix(k + 1, 0.0);
  for (int l = k - 1; l >= 0; --l) {
    const int d = block_sizes[l];
    const int r_prev = r_before[l];
    const int r_after = r_before[l + 1];
    kappa_ratio_suffix[l] = kappa_ratio_suffix[l + 1] +
                            rho.log_kappa(d, r_prev + 1) -
                            rho.log_kappa(d, r_prev);
    phi_ratio_suffix[l] = phi_ratio_suffix[l + 1] + rho.log_phi(r_after) -
                          rho.log_phi(r_after + 1);
  }

  LogPredictionWeights w;
  w.join.resize(k);
  for (int j = 0; j < k; ++j) {
    const int d = block_sizes[j];
    const int r_prev = r_before[j];
    w.join[j] = rho.log_kappa(d + 1, r_prev) - rho.log_kappa(d, r_prev) +
                kappa_ratio_suffix[j + 1] + phi_ratio_suffix[j];
  }
  w.new_block.resize(k + 1);
  for (int j = 0; j <= k; ++j) {
    const int r_prev = r_before[j];
    w.new_block[j] = rho.log_kappa(1, r_prev) - rho.log_phi(r_prev + 1) +
                     kappa_ratio_suffix[j] + phi_ratio_suffix[j];
  }
  return w;
}

/// Prediction weights with the normalization guard: the entries must sum to
/// one; a deviation beyond 1e-8 raises numeric_error instead of being
/// silently renormalized.
template <KappaPhiProvider R>
PredictionWeights prediction_weights_sizes(std::span<const int> block_sizes,
                                           const R& rho) {
  const LogPredictionWeights lw = log_prediction_weights_sizes(block_sizes, rho);
  PredictionWeights w;
  w.join.resize(lw.join.size());
  w.new_block.resize(lw.new_block.size());
  for (std::size_t j = 0; j < lw.join.size(); ++j)
    w.join[j] = std::exp(lw.join[j]);
  for (std::size_t j = 0; j < lw.new_block.size(); ++j)
    w.new_block[j] = std::exp(lw.new_block[j]);
  const double total = w.total();
  if (!(std::abs(total - 1.0) <= kWeightSumTolerance))
    throw numeric_error("prediction_weights: weights sum to " +
                        std::to_string(total) + ", expected 1");
  return w;
}

template <KappaPhiProvider R>
PredictionWeights prediction_weights(const OrderedPartition& m, const R& rho) {
  const std::vector<int> sizes = m.block_sizes();
  return prediction_weights_sizes(sizes, rho);
}

/// The Ewens law PD(p | theta): closed form the alpha = 0 Poisson-Dirichlet
/// partition law must reproduce.
inline double log_ewens(std::span<const int> block_sizes, int n,
                        double theta) {
  double value = block_sizes.size() * std::log(theta) + std::lgamma(theta) -
                 std::lgamma(theta + n);
  for (int size : block_sizes) value += std::lgamma(size);
  return value;
}

}  // namespace ntrmix
