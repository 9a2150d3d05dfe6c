// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>

#include "ntrmix/rng.hpp"

namespace ntrmix {

/// Sufficient statistics of the observations seated in one block, enough to
/// evaluate the conjugate integrals below.
struct BlockStatistics {
  int count = 0;
  double sum = 0.0;

  void add(double y) {
    ++count;
    sum += y;
  }
};

/// A kernel/base-measure pair with tractable block integrals. All values are
/// log scale. Implementations must satisfy the ratio identity
///   marginal(block + {y}) / marginal(block) == predictive(block, y)
/// which the tests assert; the seating scores and every predictive density
/// in the library are built from exactly these three calls.
class ConjugateKernel {
 public:
  virtual ~ConjugateKernel() = default;

  /// log of the integral over x of prod_i K(y_i | x) H(dx). The statistics
  /// must summarize exactly the observations in ys. Empty block: 0.
  virtual double log_marginal(const BlockStatistics& stats,
                              std::span<const double> ys) const = 0;

  /// log of the integral over x of K(y | x) pi(dx | block). Throws on an
  /// empty block; use log_marginal_single for opening a new block.
  virtual double log_predictive(const BlockStatistics& stats,
                                double y) const = 0;

  /// log of the integral over x of K(y | x) H(dx).
  virtual double log_marginal_single(double y) const = 0;

  /// One draw from the posterior of the block's latent location.
  virtual double sample_posterior(const BlockStatistics& stats,
                                  Rng& rng) const = 0;
};

/// Normal kernel with known variance and a Normal(0, prior_variance) base
/// measure. The kernel variance is a fixed hyperparameter, not the
/// intensity parameter of the same name elsewhere.
class NormalNormalModel final : public ConjugateKernel {
 public:
  struct PosteriorParams {
    double mean;
    double variance;
  };

  NormalNormalModel(double kernel_variance, double prior_variance);

  double kernel_variance() const { return kernel_variance_; }
  double prior_variance() const { return prior_variance_; }

  /// Posterior of the block location: variance 1/(d/kv + 1/A), mean
  /// (variance/kv) * sum of the block's observations. Throws on d == 0.
  PosteriorParams posterior_params(const BlockStatistics& stats) const;

  double log_marginal(const BlockStatistics& stats,
                      std::span<const double> ys) const override;
  double log_predictive(const BlockStatistics& stats, double y) const override;
  double log_marginal_single(double y) const override;
  double sample_posterior(const BlockStatistics& stats,
                          Rng& rng) const override;

 private:
  double kernel_variance_;
  double prior_variance_;
};

/// The kernel identically equal to one. Seating with it reduces to the bare
/// prediction weights, so the sampler draws exactly from the prior partition
/// law.
class UnitKernel final : public ConjugateKernel {
 public:
  double log_marginal(const BlockStatistics&,
                      std::span<const double>) const override {
    return 0.0;
  }
  double log_predictive(const BlockStatistics&, double) const override {
    return 0.0;
  }
  double log_marginal_single(double) const override { return 0.0; }
  double sample_posterior(const BlockStatistics&, Rng&) const override;
};

}  // namespace ntrmix
