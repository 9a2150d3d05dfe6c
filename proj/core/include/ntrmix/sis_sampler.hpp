// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ntrmix/eppf.hpp"
#include "ntrmix/kernels.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/ordered_partition.hpp"
#include "ntrmix/rng.hpp"

namespace ntrmix {

/// Seating configuration of the customers processed so far: the ordered
/// block list with per-block statistics, plus the running log product of
/// the one-step predictive normalizers l(0) l(1) ... which becomes the
/// importance weight of the finished draw.
class SeatingState {
 public:
  struct Block {
    std::vector<int> items;
    BlockStatistics stats;
  };

  int customers_seated() const { return customers_; }
  int n_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<int> block_sizes() const;

  double log_l_product() const { return log_l_product_; }
  /// log of the product of the chosen categories' probabilities; tracked
  /// only when identity checking is on.
  double log_proposal() const { return log_proposal_; }

  OrderedPartition partition() const;

  void join_block(int rank, int item, double y);
  void open_block(int rank, int item, double y);
  void add_log_l(double v) { log_l_product_ += v; }
  void add_log_proposal(double v) { log_proposal_ += v; }

 private:
  std::vector<Block> blocks_;
  int customers_ = 0;
  double log_l_product_ = 0.0;
  double log_proposal_ = 0.0;
};

/// One finished draw: the ordered partition and its accumulated log
/// importance weight log L(m).
struct SISDraw {
  OrderedPartition partition;
  double log_weight = 0.0;
};

struct SISOptions {
  int replicates = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Verify, per draw, that the proposal and weight reproduce the exact
  /// posterior identity. Test aid; too slow for production runs.
  bool check_identities = false;
};

/// Unnormalized log seating scores for the next customer with observation y:
/// first the k join options in rank order, then the k+1 new-block options.
/// The log-sum-exp of all entries is log l(n).
template <KappaPhiProvider R>
std::vector<double> seating_log_scores(const SeatingState& state, double y,
                                       const R& rho,
                                       const ConjugateKernel& kernel) {
  const std::vector<int> sizes = state.block_sizes();
  const LogPredictionWeights lw = log_prediction_weights_sizes(sizes, rho);

  std::vector<double> log_weights;
  log_weights.reserve(lw.join.size() + lw.new_block.size());
  log_weights.insert(log_weights.end(), lw.join.begin(), lw.join.end());
  log_weights.insert(log_weights.end(), lw.new_block.begin(),
                     lw.new_block.end());
  const double weight_sum = std::exp(log_sum_exp(log_weights));
  if (!(std::abs(weight_sum - 1.0) <= kWeightSumTolerance))
    throw numeric_error("seating_log_scores: transition weights sum to " +
                        std::to_string(weight_sum) + ", expected 1");

  std::vector<double> scores;
  scores.reserve(log_weights.size());
  for (std::size_t j = 0; j < lw.join.size(); ++j)
    scores.push_back(lw.join[j] +
                     kernel.log_predictive(state.blocks()[j].stats, y));
  const double log_m0 = kernel.log_marginal_single(y);
  for (double q : lw.new_block) scores.push_back(q + log_m0);
  return scores;
}

/// Seats the next customer: samples one of the 2k+1 options proportionally
/// to its score, inserts the customer, and accumulates log l(n).
template <KappaPhiProvider R>
void seat_next(SeatingState& state, int item, double y, const R& rho,
               const ConjugateKernel& kernel, Rng& rng) {
  const std::vector<double> log_scores =
      seating_log_scores(state, y, rho, kernel);
  const double log_l = log_sum_exp(log_scores);
  if (!std::isfinite(log_l))
    throw numeric_error("seat_next: all seating scores are zero");

  std::vector<double> probs(log_scores.size());
  for (std::size_t i = 0; i < log_scores.size(); ++i)
    probs[i] = std::exp(log_scores[i] - log_l);
  const int choice = rng.categorical(probs);

  const int k = state.n_blocks();
  if (choice < k)
    state.join_block(choice, item, y);
  else
    state.open_block(choice - k, item, y);
  state.add_log_l(log_l);
  state.add_log_proposal(log_scores[choice] - log_l);
}

/// B independent draws of the ordered partition of the data, each built by
/// sequential seating; draw b uses the random stream (seed, b), so results
/// do not depend on the thread count.
std::vector<SISDraw> run_sis(std::span<const double> data,
                             const LevyIntensity& rho,
                             const ConjugateKernel& kernel,
                             const SISOptions& options);

struct EstimateResult {
  double value = 0.0;
  double std_error = 0.0;
  double ess = 0.0;
};

/// Self-normalized importance estimate of E[h(m) | data] with max-shifted
/// weights, the delta-method standard error, and the effective sample size
/// (sum w)^2 / sum w^2.
EstimateResult estimate(std::span<const SISDraw> draws,
                        const std::function<double(const SISDraw&)>& h);

/// Predictive density f(y | m, data) on a grid: the new-block mass times the
/// prior marginal plus the join weights times each block's posterior
/// predictive.
template <KappaPhiProvider R>
std::vector<double> predictive_density(const OrderedPartition& m,
                                       std::span<const double> data,
                                       std::span<const double> grid,
                                       const R& rho,
                                       const ConjugateKernel& kernel) {
  const std::vector<int> sizes = m.block_sizes();
  const PredictionWeights w = prediction_weights_sizes(sizes, rho);

  std::vector<BlockStatistics> stats(m.n_blocks());
  for (int j = 0; j < m.n_blocks(); ++j)
    for (int item : m.blocks()[j]) stats[j].add(data[item]);

  double new_mass = 0.0;
  for (double q : w.new_block) new_mass += q;

  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double y = grid[g];
    double f = new_mass * std::exp(kernel.log_marginal_single(y));
    for (int j = 0; j < m.n_blocks(); ++j)
      f += w.join[j] * std::exp(kernel.log_predictive(stats[j], y));
    density[g] = f;
  }
  return density;
}

/// Weighted-average predictive density over SIS draws with per-point Monte
/// Carlo standard errors and the shared effective sample size.
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> value;
  std::vector<double> std_error;
  double ess = 0.0;
};

DensityEstimate estimate_density(std::span<const SISDraw> draws,
                                 std::span<const double> data,
                                 std::span<const double> grid,
                                 const LevyIntensity& rho,
                                 const ConjugateKernel& kernel);

/// Partition of n items induced by sampling stick-breaking weights with
/// W_k independent Beta(1 - alpha, theta + k alpha). Sticks are generated
/// until the leftover mass is below 1e-12 (capped at 10^4 atoms); an item
/// landing in the leftover opens its own new block.
Partition stick_breaking_sample(double alpha, double theta, int n, Rng& rng);

}  // namespace ntrmix
