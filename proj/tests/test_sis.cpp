// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "ntrmix/eppf.hpp"
#include "ntrmix/exact_oracle.hpp"
#include "ntrmix/kernels.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/numeric.hpp"
#include "ntrmix/sis_sampler.hpp"

using ntrmix::estimate;
using ntrmix::KappaPhiTable;
using ntrmix::LevyIntensity;
using ntrmix::NormalNormalModel;
using ntrmix::OrderedPartition;
using ntrmix::Partition;
using ntrmix::Rng;
using ntrmix::run_sis;
using ntrmix::SeatingState;
using ntrmix::SISDraw;
using ntrmix::SISOptions;
using ntrmix::UnitKernel;

TEST_CASE("first customer always opens the first block") {
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const KappaPhiTable table(rho, 4);
  const NormalNormalModel kernel(1.0, 1.0);
  Rng rng(3);
  SeatingState state;
  ntrmix::seat_next(state, 0, 0.7, table, kernel, rng);
  CHECK(state.n_blocks() == 1);
  CHECK(state.customers_seated() == 1);
  // l(0) is the prior marginal of the observation.
  CHECK(state.log_l_product() ==
        doctest::Approx(kernel.log_marginal_single(0.7)).epsilon(1e-14));
}

TEST_CASE("unit-kernel seating scores are exactly the prediction weights") {
  const auto rho = LevyIntensity::poisson_dirichlet(0.4, 0.9);
  const KappaPhiTable table(rho, 5);
  const UnitKernel unit;
  for (const OrderedPartition& m : ntrmix::enumerate_ordered(4)) {
    SeatingState state;
    // Rebuild the state by replaying the partition's blocks.
    for (int j = 0; j < m.n_blocks(); ++j)
      for (std::size_t c = 0; c < m.blocks()[j].size(); ++c) {
        if (c == 0)
          state.open_block(j, m.blocks()[j][c], 0.0);
        else
          state.join_block(j, m.blocks()[j][c], 0.0);
      }
    const auto scores = ntrmix::seating_log_scores(state, 0.0, table, unit);
    const auto weights = ntrmix::prediction_weights(m, table);
    REQUIRE(scores.size() == weights.join.size() + weights.new_block.size());
    for (std::size_t j = 0; j < weights.join.size(); ++j)
      CHECK(std::exp(scores[j]) ==
            doctest::Approx(weights.join[j]).epsilon(1e-12));
    for (std::size_t j = 0; j < weights.new_block.size(); ++j)
      CHECK(std::exp(scores[weights.join.size() + j]) ==
            doctest::Approx(weights.new_block[j]).epsilon(1e-12));
  }
}

TEST_CASE("three seating options of a one-customer state, by hand") {
  // State: one block {y = 0}; next observation 0. Weights are uniform 1/3
  // at theta = 1, so the scores are the predictive and two marginals.
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const KappaPhiTable table(rho, 2);
  const NormalNormalModel kernel(1.0, 1.0);
  SeatingState state;
  state.open_block(0, 0, 0.0);
  const auto scores = ntrmix::seating_log_scores(state, 0.0, table, kernel);
  REQUIRE(scores.size() == 3);

  const double third = std::log(1.0 / 3.0);
  const double join_score =
      third + ntrmix::log_normal_density(0.0, 0.0, 1.5);
  const double new_score = third + ntrmix::log_normal_density(0.0, 0.0, 2.0);
  CHECK(scores[0] == doctest::Approx(join_score).epsilon(1e-12));
  CHECK(scores[1] == doctest::Approx(new_score).epsilon(1e-12));
  CHECK(scores[2] == doctest::Approx(new_score).epsilon(1e-12));
}

TEST_CASE("identical seeds give identical draws") {
  const std::vector<double> data{0.3, -1.2, 0.8, 2.0};
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const NormalNormalModel kernel(1.0, 1.0);
  SISOptions options;
  options.replicates = 50;
  options.seed = 77;
  const auto a = run_sis(data, rho, kernel, options);
  const auto b = run_sis(data, rho, kernel, options);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].partition == b[i].partition);
    CHECK(a[i].log_weight == b[i].log_weight);
  }
}

TEST_CASE("thread count does not change the draws") {
  const std::vector<double> data{0.3, -1.2, 0.8, 2.0, -0.4};
  const auto rho = LevyIntensity::poisson_dirichlet(0.3, 1.0);
  const NormalNormalModel kernel(1.0, 1.0);
  SISOptions serial;
  serial.replicates = 64;
  serial.seed = 5;
  SISOptions parallel = serial;
  parallel.threads = 4;
  const auto a = run_sis(data, rho, kernel, serial);
  const auto b = run_sis(data, rho, kernel, parallel);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].partition == b[i].partition);
    CHECK(a[i].log_weight == b[i].log_weight);
  }
}

TEST_CASE("unit kernel draws follow the prior ordered law") {
  const std::vector<double> data{0.0, 0.0, 0.0, 0.0};
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const UnitKernel unit;
  SISOptions options;
  options.replicates = 50000;
  options.seed = 11;
  const auto draws = run_sis(data, rho, unit, options);

  std::map<std::vector<int>, int> counts;
  for (const SISDraw& d : draws) ++counts[d.partition.rank_of_item()];

  const int b = options.replicates;
  for (const OrderedPartition& m : ntrmix::enumerate_ordered(4)) {
    const double p = std::exp(log_prob_ordered(m, rho));
    const double freq =
        counts.count(m.rank_of_item()) ? counts[m.rank_of_item()] : 0;
    const double se = std::sqrt(p * (1.0 - p) / b);
    CHECK(std::abs(freq / b - p) <= 3.5 * se);
  }
}

TEST_CASE("per-draw weight identity holds with checking enabled") {
  const std::vector<double> data{-0.7, 0.4, 1.9, -1.1, 0.2};
  const auto rho = LevyIntensity::poisson_dirichlet(0.5, 0.5);
  const NormalNormalModel kernel(0.8, 1.5);
  SISOptions options;
  options.replicates = 500;
  options.seed = 23;
  options.check_identities = true;
  CHECK_NOTHROW(run_sis(data, rho, kernel, options));
}

TEST_CASE("unit-kernel proposal probability reproduces the ordered law") {
  const std::vector<double> data{0.0, 0.0, 0.0, 0.0, 0.0};
  const auto rho = LevyIntensity::homogeneous_beta(2.0);
  const KappaPhiTable table(rho, 5);
  const UnitKernel unit;
  for (std::uint64_t b = 0; b < 200; ++b) {
    Rng rng = Rng::stream(17, b);
    SeatingState state;
    for (std::size_t i = 0; i < data.size(); ++i)
      ntrmix::seat_next(state, static_cast<int>(i), data[i], table, unit, rng);
    // With a unit kernel the weight is 1 and the proposal is the law itself.
    CHECK(state.log_l_product() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(state.log_proposal() ==
          doctest::Approx(log_prob_ordered(state.partition(), table))
              .epsilon(1e-12));
  }
}

TEST_CASE("estimate of the constant functional is exactly one") {
  const std::vector<double> data{0.5, -0.5};
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const NormalNormalModel kernel(1.0, 1.0);
  SISOptions options;
  options.replicates = 100;
  options.seed = 1;
  const auto draws = run_sis(data, rho, kernel, options);
  const auto result = estimate(draws, [](const SISDraw&) { return 1.0; });
  CHECK(result.value == 1.0);
  CHECK(result.std_error == 0.0);
}

TEST_CASE("estimate from a single draw is the functional value with ess one") {
  const std::vector<double> data{0.5};
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const NormalNormalModel kernel(1.0, 1.0);
  SISOptions options;
  options.replicates = 1;
  options.seed = 9;
  const auto draws = run_sis(data, rho, kernel, options);
  const auto result =
      estimate(draws, [](const SISDraw& d) { return 2.0 * d.partition.n_blocks(); });
  CHECK(result.value == 2.0);
  CHECK(result.ess == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("posterior block count matches the exact oracle within three ses") {
  const std::vector<double> data{-1.8, -0.2, 0.1, 1.4, 2.6};
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const NormalNormalModel kernel(1.0, 1.0);

  const auto table = ntrmix::exact_posterior(data, rho, kernel);
  const double exact_mean = table.posterior_mean_blocks();

  SISOptions options;
  options.replicates = 20000;
  options.seed = 31;
  const auto draws = run_sis(data, rho, kernel, options);
  const auto result = estimate(draws, [](const SISDraw& d) {
    return static_cast<double>(d.partition.n_blocks());
  });
  CHECK(std::abs(result.value - exact_mean) <= 3.0 * result.std_error);
  CHECK(result.ess > 1.0);
}

TEST_CASE("empty-state predictive density is the prior marginal") {
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const KappaPhiTable table(rho, 1);
  const NormalNormalModel kernel(1.0, 1.0);
  const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto density = ntrmix::predictive_density(OrderedPartition(), {},
                                                  grid, table, kernel);
  for (std::size_t g = 0; g < grid.size(); ++g)
    CHECK(density[g] ==
          doctest::Approx(std::exp(kernel.log_marginal_single(grid[g])))
              .epsilon(1e-12));
}

TEST_CASE("per-draw predictive density integrates to one") {
  const std::vector<double> data{-0.9, 0.3, 1.2};
  const auto rho = LevyIntensity::poisson_dirichlet(0.3, 1.0);
  const KappaPhiTable table(rho, 4);
  const NormalNormalModel kernel(1.0, 1.0);

  // Wide trapezoid grid: +-10 standard deviations of the widest component.
  const double sd = std::sqrt(1.0 + 1.0);
  const double lo = -10.0 * sd - 2.0, hi = 10.0 * sd + 2.0;
  const int steps = 4001;
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = lo + (hi - lo) * i / (steps - 1);

  for (const OrderedPartition& m : ntrmix::enumerate_ordered(3)) {
    const auto density = ntrmix::predictive_density(m, data, grid, table, kernel);
    double integral = 0.0;
    for (int i = 0; i + 1 < steps; ++i)
      integral += 0.5 * (density[i] + density[i + 1]) * (grid[i + 1] - grid[i]);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("stick breaking with tiny theta collapses to one block") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Partition p = ntrmix::stick_breaking_sample(0.0, 1e-9, 6, rng);
    CHECK(p.n_blocks() == 1);
  }
}

TEST_CASE("stick breaking matches the dirichlet two-item split probability") {
  Rng rng(12);
  const int b = 100000;
  int together = 0;
  for (int i = 0; i < b; ++i)
    if (ntrmix::stick_breaking_sample(0.0, 1.0, 2, rng).n_blocks() == 1)
      ++together;
  const double se = std::sqrt(0.25 / b);
  CHECK(std::abs(together / static_cast<double>(b) - 0.5) <= 3.0 * se);
}

TEST_CASE("stick breaking matches the partition law across three items") {
  const auto rho = LevyIntensity::poisson_dirichlet(0.5, 0.5);
  Rng rng(21);
  const int b = 100000;
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < b; ++i)
    ++counts[ntrmix::stick_breaking_sample(0.5, 0.5, 3, rng)
                 .restricted_growth_string()];
  for (const Partition& p : ntrmix::enumerate_partitions(3)) {
    const double prob = std::exp(log_prob_partition(p, rho));
    const double freq = counts.count(p.restricted_growth_string())
                            ? counts[p.restricted_growth_string()]
                            : 0;
    const double se = std::sqrt(prob * (1.0 - prob) / b);
    CHECK(std::abs(freq / b - prob) <= 3.5 * se);
  }
}

TEST_CASE("run_sis validates its inputs") {
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  const NormalNormalModel kernel(1.0, 1.0);
  SISOptions options;
  CHECK_THROWS_AS(run_sis({}, rho, kernel, options), std::invalid_argument);
  options.replicates = 0;
  const std::vector<double> data{1.0};
  CHECK_THROWS_AS(run_sis(data, rho, kernel, options), std::invalid_argument);
}
