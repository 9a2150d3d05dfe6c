// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "ntrmix/numeric.hpp"

namespace ntrmix {

namespace {
constexpr double kMinKernelVariance = 1e-12;
}

NormalNormalModel::NormalNormalModel(double kernel_variance,
                                     double prior_variance)
    : kernel_variance_(kernel_variance), prior_variance_(prior_variance) {
  if (!(kernel_variance >= kMinKernelVariance) ||
      !std::isfinite(kernel_variance))
    throw std::invalid_argument(
        "NormalNormalModel: kernel variance below minimum 1e-12");
  if (!(prior_variance > 0.0) || !std::isfinite(prior_variance))
    throw std::invalid_argument(
        "NormalNormalModel: prior variance must be positive");
}

NormalNormalModel::PosteriorParams NormalNormalModel::posterior_params(
    const BlockStatistics& stats) const {
  if (stats.count < 1)
    throw std::invalid_argument("posterior_params: empty block");
  const double variance =
      1.0 / (stats.count / kernel_variance_ + 1.0 / prior_variance_);
  const double mean = (variance / kernel_variance_) * stats.sum;
  return {mean, variance};
}

double NormalNormalModel::log_marginal(const BlockStatistics& stats,
                                       std::span<const double> ys) const {
  if (stats.count == 0) return 0.0;  // empty product
  if (static_cast<int>(ys.size()) != stats.count)
    throw std::invalid_argument("log_marginal: stats inconsistent with ys");
  const double d = stats.count;
  const double kv = kernel_variance_;
  const double a = prior_variance_;
  double sum_sq = 0.0;
  for (double y : ys) sum_sq += y * y;
  return -0.5 * d * (kLogTwoPi + std::log(kv)) -
         0.5 * std::log1p(d * a / kv) - sum_sq / (2.0 * kv) +
         a * stats.sum * stats.sum / (2.0 * kv * (kv + d * a));
}

double NormalNormalModel::log_predictive(const BlockStatistics& stats,
                                         double y) const {
  if (stats.count < 1)
    throw std::invalid_argument("log_predictive: empty block");
  const PosteriorParams post = posterior_params(stats);
  return log_normal_density(y, post.mean, kernel_variance_ + post.variance);
}

double NormalNormalModel::log_marginal_single(double y) const {
  return log_normal_density(y, 0.0, kernel_variance_ + prior_variance_);
}

double NormalNormalModel::sample_posterior(const BlockStatistics& stats,
                                           Rng& rng) const {
  const PosteriorParams post = posterior_params(stats);
  return post.mean + std::sqrt(post.variance) * rng.normal();
}

double UnitKernel::sample_posterior(const BlockStatistics&, Rng&) const {
  throw std::logic_error("UnitKernel: no posterior to sample");
}

}  // namespace ntrmix
