// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/sis_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ntrmix {

std::vector<int> SeatingState::block_sizes() const {
  std::vector<int> sizes(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    sizes[j] = static_cast<int>(blocks_[j].items.size());
  return sizes;
}

OrderedPartition SeatingState::partition() const {
  std::vector<std::vector<int>> blocks(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    blocks[j] = blocks_[j].items;
  return OrderedPartition(customers_, std::move(blocks));
}

void SeatingState::join_block(int rank, int item, double y) {
  blocks_.at(rank).items.push_back(item);
  blocks_.at(rank).stats.add(y);
  ++customers_;
}

void SeatingState::open_block(int rank, int item, double y) {
  if (rank < 0 || rank > n_blocks())
    throw std::out_of_range("open_block: rank out of range");
  Block block;
  block.items.push_back(item);
  block.stats.add(y);
  blocks_.insert(blocks_.begin() + rank, std::move(block));
  ++customers_;
}

namespace {

// L(m) q(m) must equal pi(m) * prod_j m0(D_j); violation means the seating
// rule and the ordered law have drifted apart.
void check_draw_identity(const SeatingState& state,
                         std::span<const double> data,
                         const KappaPhiTable& table,
                         const ConjugateKernel& kernel) {
  const OrderedPartition m = state.partition();
  double rhs = log_prob_ordered(m, table);
  for (const auto& block : m.blocks()) {
    std::vector<double> ys;
    ys.reserve(block.size());
    BlockStatistics stats;
    for (int item : block) {
      ys.push_back(data[item]);
      stats.add(data[item]);
    }
    rhs += kernel.log_marginal(stats, ys);
  }
  const double lhs = state.log_l_product() + state.log_proposal();
  if (!relative_close(lhs, rhs, 1e-10))
    throw numeric_error("run_sis: weight identity violated");
}

SISDraw run_one_replicate(std::span<const double> data,
                          const KappaPhiTable& table,
                          const ConjugateKernel& kernel,
                          const SISOptions& options, std::uint64_t b) {
  Rng rng = Rng::stream(options.seed, b);
  SeatingState state;
  for (std::size_t i = 0; i < data.size(); ++i)
    seat_next(state, static_cast<int>(i), data[i], table, kernel, rng);
  if (options.check_identities)
    check_draw_identity(state, data, table, kernel);
  return SISDraw{state.partition(), state.log_l_product()};
}

}  // namespace

std::vector<SISDraw> run_sis(std::span<const double> data,
                             const LevyIntensity& rho,
                             const ConjugateKernel& kernel,
                             const SISOptions& options) {
  if (data.empty()) throw std::invalid_argument("run_sis: empty data");
  if (options.replicates < 1)
    throw std::invalid_argument("run_sis: replicates must be >= 1");

  const KappaPhiTable table(rho, static_cast<int>(data.size()));
  std::vector<SISDraw> draws(options.replicates);

  const int threads =
      std::max(1, std::min(options.threads, options.replicates));
  if (threads == 1) {
    for (int b = 0; b < options.replicates; ++b)
      draws[b] = run_one_replicate(data, table, kernel, options,
                                   static_cast<std::uint64_t>(b));
    return draws;
  }

  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int b = t; b < options.replicates; b += threads)
          draws[b] = run_one_replicate(data, table, kernel, options,
                                       static_cast<std::uint64_t>(b));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
  return draws;
}

namespace {

std::vector<double> normalized_weights(std::span<const SISDraw> draws) {
  double max_lw = draws[0].log_weight;
  for (const SISDraw& d : draws) max_lw = std::max(max_lw, d.log_weight);
  std::vector<double> w(draws.size());
  double total = 0.0;
  for (std::size_t b = 0; b < draws.size(); ++b) {
    w[b] = std::exp(draws[b].log_weight - max_lw);
    total += w[b];
  }
  for (double& v : w) v /= total;
  return w;
}

double ess_of(std::span<const double> normalized) {
  double sum_sq = 0.0;
  for (double w : normalized) sum_sq += w * w;
  return 1.0 / sum_sq;
}

}  // namespace

EstimateResult estimate(std::span<const SISDraw> draws,
                        const std::function<double(const SISDraw&)>& h) {
  if (draws.empty()) throw std::invalid_argument("estimate: no draws");

  // Ratio form (sum w h) / (sum w) with matching accumulation order, so a
  // constant functional is reproduced bit-exactly.
  double max_lw = draws[0].log_weight;
  for (const SISDraw& d : draws) max_lw = std::max(max_lw, d.log_weight);
  std::vector<double> w(draws.size());
  std::vector<double> hs(draws.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t b = 0; b < draws.size(); ++b) {
    w[b] = std::exp(draws[b].log_weight - max_lw);
    hs[b] = h(draws[b]);
    total += w[b];
    weighted += w[b] * hs[b];
  }
  const double value = weighted / total;

  double var = 0.0;
  double sum_sq = 0.0;
  for (std::size_t b = 0; b < draws.size(); ++b) {
    const double wn = w[b] / total;
    const double dev = hs[b] - value;
    var += wn * wn * dev * dev;
    sum_sq += wn * wn;
  }
  return EstimateResult{value, std::sqrt(var), 1.0 / sum_sq};
}

DensityEstimate estimate_density(std::span<const SISDraw> draws,
                                 std::span<const double> data,
                                 std::span<const double> grid,
                                 const LevyIntensity& rho,
                                 const ConjugateKernel& kernel) {
  if (draws.empty()) throw std::invalid_argument("estimate_density: no draws");
  const KappaPhiTable table(rho, static_cast<int>(data.size()) + 1);
  const std::vector<double> w = normalized_weights(draws);

  DensityEstimate out;
  out.grid.assign(grid.begin(), grid.end());
  out.value.assign(grid.size(), 0.0);
  out.std_error.assign(grid.size(), 0.0);
  out.ess = ess_of(w);

  // Single pass accumulating the power sums that yield both the weighted
  // mean and the delta-method variance at every grid point.
  std::vector<double> sum_w2h(grid.size(), 0.0);
  std::vector<double> sum_w2h2(grid.size(), 0.0);
  double sum_w2 = 0.0;
  for (std::size_t b = 0; b < draws.size(); ++b) {
    const std::vector<double> f =
        predictive_density(draws[b].partition, data, grid, table, kernel);
    const double wb = w[b];
    sum_w2 += wb * wb;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      out.value[g] += wb * f[g];
      sum_w2h[g] += wb * wb * f[g];
      sum_w2h2[g] += wb * wb * f[g] * f[g];
    }
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double v = out.value[g];
    const double var =
        std::max(0.0, sum_w2h2[g] - 2.0 * v * sum_w2h[g] + v * v * sum_w2);
    out.std_error[g] = std::sqrt(var);
  }
  return out;
}

Partition stick_breaking_sample(double alpha, double theta, int n, Rng& rng) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("stick_breaking_sample: alpha must be in [0,1)");
  if (!(theta > 0.0))
    throw std::invalid_argument("stick_breaking_sample: theta must be positive");
  if (n < 0)
    throw std::invalid_argument("stick_breaking_sample: n must be >= 0");

  constexpr double kResidualFloor = 1e-12;
  constexpr int kMaxAtoms = 10000;

  // Sticks are generated lazily: only as deep as some item's uniform
  // requires. Heavy-tailed weight sequences (alpha > 0) would otherwise
  // need ~1/residual atoms up front.
  std::vector<double> cumulative;  // cumulative stick masses
  double remaining = 1.0;
  auto extend_to = [&](double u) {
    while ((cumulative.empty() || cumulative.back() <= u) &&
           remaining >= kResidualFloor &&
           static_cast<int>(cumulative.size()) < kMaxAtoms) {
      const int k = static_cast<int>(cumulative.size()) + 1;
      const double w = rng.beta(1.0 - alpha, theta + k * alpha);
      const double mass = remaining * w;
      cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) +
                           mass);
      remaining *= (1.0 - w);
    }
  };

  // Labels: atom index for stick draws; fresh (unique) labels past the
  // truncation point, since a non-atomic base measure never repeats a value.
  std::vector<int> label(n);
  int fresh = kMaxAtoms;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    extend_to(u);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    label[i] = (it != cumulative.end())
                   ? static_cast<int>(it - cumulative.begin())
                   : fresh++;
  }

  std::vector<std::vector<int>> blocks;
  std::vector<int> block_labels;
  for (int i = 0; i < n; ++i) {
    int slot = -1;
    for (std::size_t b = 0; b < block_labels.size(); ++b)
      if (block_labels[b] == label[i]) slot = static_cast<int>(b);
    if (slot < 0) {
      slot = static_cast<int>(blocks.size());
      blocks.emplace_back();
      block_labels.push_back(label[i]);
    }
    blocks[slot].push_back(i);
  }
  return Partition(n, std::move(blocks));
}

}  // namespace ntrmix
