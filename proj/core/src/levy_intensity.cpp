// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/levy_intensity.hpp"

#include <cmath>
#include <stdexcept>

#include "ntrmix/numeric.hpp"
#include "ntrmix/quadrature.hpp"

namespace ntrmix {

namespace {

constexpr double kEndpointSplit = 1e-12;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw numeric_error(what);
}

// Tail-form integrand for kappa: (d/du)[u^d (1-u)^r] * T(u).
double tail_kappa_integrand(const std::function<double(double)>& tail, int d,
                            int r, double u) {
  const double t = tail(u);
  double g = d * std::pow(u, d - 1) * std::pow(1.0 - u, r);
  if (r > 0) g -= r * std::pow(u, d) * std::pow(1.0 - u, r - 1);
  return g * t;
}

double integrate_tail_form(const std::function<double(double)>& f) {
  const double segments[4] = {0.0, kEndpointSplit, 1.0 - kEndpointSplit, 1.0};
  return integrate_segments(f, segments);
}

}  // namespace

LevyIntensity LevyIntensity::homogeneous_beta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("homogeneous_beta: theta must be positive");
  LevyIntensity rho;
  rho.kind_ = Kind::kHomogeneousBeta;
  rho.theta_ = theta;
  return rho;
}

LevyIntensity LevyIntensity::poisson_dirichlet(double alpha, double theta) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("poisson_dirichlet: alpha must be in [0,1)");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("poisson_dirichlet: theta must be positive");
  LevyIntensity rho;
  rho.kind_ = Kind::kPoissonDirichlet;
  rho.alpha_ = alpha;
  rho.theta_ = theta;
  return rho;
}

LevyIntensity LevyIntensity::generic_tail(
    std::function<double(double)> tail_mass) {
  if (!tail_mass)
    throw std::invalid_argument("generic_tail: tail function required");
  LevyIntensity rho;
  rho.kind_ = Kind::kGenericTail;
  rho.tail_ = std::move(tail_mass);
  return rho;
}

double LevyIntensity::log_kappa(int d, int r) const {
  if (d < 1) throw std::invalid_argument("log_kappa: d must be >= 1");
  if (r < 0) throw std::invalid_argument("log_kappa: r must be >= 0");

  double value = 0.0;
  switch (kind_) {
    case Kind::kHomogeneousBeta:
      value = std::log(theta_) + log_beta(d, r + theta_);
      break;
    case Kind::kPoissonDirichlet:
      // Closed form from the density implied by the tail mass:
      //   kappa(d,r) = Gamma(t+2-a) Gamma(d-a) Gamma(r+t) (a r + t d)
      //              / (Gamma(1-a) Gamma(1+t) Gamma(d+r+t+1-a))
      value = std::log(alpha_ * r + theta_ * d) +
              std::lgamma(theta_ + 2.0 - alpha_) + std::lgamma(d - alpha_) +
              std::lgamma(r + theta_) - std::lgamma(1.0 - alpha_) -
              std::lgamma(1.0 + theta_) -
              std::lgamma(d + r + theta_ + 1.0 - alpha_);
      break;
    case Kind::kGenericTail: {
      const double integral = integrate_tail_form(
          [&](double u) { return tail_kappa_integrand(tail_, d, r, u); });
      if (!(integral > 0.0))
        throw numeric_error("log_kappa: tail quadrature gave a non-positive value");
      value = std::log(integral);
      break;
    }
  }
  require_finite(value, "log_kappa: non-finite result");
  return value;
}

double LevyIntensity::log_phi(int n) const {
  if (n < 1) throw std::invalid_argument("log_phi: n must be >= 1");

  double value = 0.0;
  switch (kind_) {
    case Kind::kHomogeneousBeta: {
      double sum = 0.0;
      for (int l = 1; l <= n; ++l) sum += theta_ / (theta_ + l - 1);
      value = std::log(sum);
      break;
    }
    case Kind::kPoissonDirichlet:
      value = std::log(static_cast<double>(n)) +
              std::lgamma(theta_ + 2.0 - alpha_) + std::lgamma(n + theta_) -
              std::lgamma(1.0 + theta_) -
              std::lgamma(n + theta_ + 1.0 - alpha_);
      break;
    case Kind::kGenericTail: {
      const double integral = integrate_tail_form([&](double u) {
        return n * std::pow(1.0 - u, n - 1) * tail_(u);
      });
      if (!(integral > 0.0))
        throw numeric_error("log_phi: tail quadrature gave a non-positive value");
      value = std::log(integral);
      break;
    }
  }
  require_finite(value, "log_phi: non-finite result");
  return value;
}

double LevyIntensity::kappa(int d, int r) const {
  return std::exp(log_kappa(d, r));
}

double LevyIntensity::phi(int n) const {
  if (n < 1) throw std::invalid_argument("phi: n must be >= 1");
  if (kind_ == Kind::kHomogeneousBeta) {
    // The finite sum itself, bypassing the log round trip so the linear
    // value is bit-exact.
    double sum = 0.0;
    for (int l = 1; l <= n; ++l) sum += theta_ / (theta_ + l - 1);
    return sum;
  }
  return std::exp(log_phi(n));
}

double pd_tail(double alpha, double theta, double u) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("pd_tail: alpha must be in [0,1)");
  if (!(theta > 0.0))
    throw std::invalid_argument("pd_tail: theta must be positive");
  if (!(u > 0.0 && u <= 1.0))
    throw std::invalid_argument("pd_tail: u must be in (0,1]");
  const double log_const = std::lgamma(theta + 2.0 - alpha) -
                           std::lgamma(1.0 - alpha) - std::lgamma(1.0 + theta);
  return std::exp(log_const - alpha * std::log(u) +
                  theta * std::log1p(-u));
}

KappaPhiTable::KappaPhiTable(const LevyIntensity& rho, int n_max)
    : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("KappaPhiTable: n_max must be >= 0");
  const int rows = n_max + 1;  // d = 1 .. n_max+1
  const int cols = n_max + 1;  // r = 0 .. n_max
  log_kappa_.resize(static_cast<std::size_t>(rows) * cols);
  for (int d = 1; d <= rows; ++d)
    for (int r = 0; r < cols; ++r)
      log_kappa_[static_cast<std::size_t>(d - 1) * cols + r] =
          rho.log_kappa(d, r);
  log_phi_.resize(rows);
  for (int n = 1; n <= rows; ++n) log_phi_[n - 1] = rho.log_phi(n);
}

double KappaPhiTable::log_kappa(int d, int r) const {
  if (d < 1 || d > n_max_ + 1 || r < 0 || r > n_max_)
    throw std::out_of_range("KappaPhiTable::log_kappa: index outside table");
  return log_kappa_[static_cast<std::size_t>(d - 1) * (n_max_ + 1) + r];
}

double KappaPhiTable::log_phi(int n) const {
  if (n < 1 || n > n_max_ + 1)
    throw std::out_of_range("KappaPhiTable::log_phi: index outside table");
  return log_phi_[n - 1];
}

}  // namespace ntrmix
