// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/numeric.hpp"
#include "support/quadrature_oracle.hpp"

using ntrmix::LevyIntensity;
using ntrmix::pd_tail;

namespace {

// Density of the homogeneous beta intensity: theta u^{-1} (1-u)^{theta-1}.
// Densities take u and 1-u separately; see integrate_unit_interval.
double hb_density(double theta, double u, double omu) {
  return theta * std::pow(u, -1.0) * std::pow(omu, theta - 1.0);
}

// Density implied by the Poisson-Dirichlet tail mass, by differentiating
// the tail: C [alpha u^{-alpha-1} (1-u)^theta + theta u^{-alpha} (1-u)^{theta-1}].
double pd_density(double alpha, double theta, double u, double omu) {
  const double c = std::exp(std::lgamma(theta + 2.0 - alpha) -
                            std::lgamma(1.0 - alpha) -
                            std::lgamma(1.0 + theta));
  return c * (alpha * std::pow(u, -alpha - 1.0) * std::pow(omu, theta) +
              theta * std::pow(u, -alpha) * std::pow(omu, theta - 1.0));
}

using Density = std::function<double(double, double)>;

double kappa_by_quadrature(const Density& density, int d, int r) {
  return test_support::integrate_unit_interval([&](double u, double omu) {
    return std::pow(u, d) * std::pow(omu, r) * density(u, omu);
  });
}

double phi_by_quadrature(const Density& density, int n) {
  // 1 - (1-u)^n written as -expm1(n log1p(-u)): stable against the u^{-1}
  // factor in the densities near u = 0.
  return test_support::integrate_unit_interval([&](double u, double omu) {
    return -std::expm1(n * std::log1p(-u)) * density(u, omu);
  });
}

std::vector<LevyIntensity> test_intensities() {
  return {LevyIntensity::homogeneous_beta(0.5),
          LevyIntensity::homogeneous_beta(1.0),
          LevyIntensity::homogeneous_beta(2.0),
          LevyIntensity::poisson_dirichlet(0.0, 1.0),
          LevyIntensity::poisson_dirichlet(0.3, 1.0),
          LevyIntensity::poisson_dirichlet(0.5, 0.5),
          LevyIntensity::generic_tail(
              [](double u) { return pd_tail(0.0, 1.5, u); })};
}

}  // namespace

TEST_CASE("homogeneous beta kappa equals theta * B(d, r + theta)") {
  for (double theta : {0.5, 1.0, 2.0, 3.7}) {
    const auto rho = LevyIntensity::homogeneous_beta(theta);
    for (int d = 1; d <= 5; ++d) {
      for (int r = 0; r <= 5; ++r) {
        const double expected =
            theta * std::exp(ntrmix::log_beta(d, r + theta));
        CHECK(rho.kappa(d, r) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  // Normalization pins kappa(1,0) = 1.
  CHECK(LevyIntensity::homogeneous_beta(1.0).kappa(1, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kappa closed forms match the quadrature oracle") {
  for (double theta : {0.5, 1.0, 2.0}) {
    const auto rho = LevyIntensity::homogeneous_beta(theta);
    for (int d = 1; d <= 10; ++d)
      for (int r = 0; r <= 10; ++r) {
        const double oracle = kappa_by_quadrature(
            [theta](double u, double omu) { return hb_density(theta, u, omu); },
            d, r);
        CHECK(rho.kappa(d, r) == doctest::Approx(oracle).epsilon(1e-8));
      }
  }
  for (auto [alpha, theta] :
       std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.3, 1.0}, {0.5, 0.5}}) {
    const auto rho = LevyIntensity::poisson_dirichlet(alpha, theta);
    for (int d = 1; d <= 10; ++d)
      for (int r = 0; r <= 10; ++r) {
        const double oracle = kappa_by_quadrature(
            [alpha, theta](double u, double omu) {
              return pd_density(alpha, theta, u, omu);
            },
            d, r);
        CHECK(rho.kappa(d, r) == doctest::Approx(oracle).epsilon(1e-8));
      }
  }
}

TEST_CASE("dirichlet-case kappa(2,0) is 2/3") {
  // rho(du) = 2 du; oracle integrates u^2 * 2 directly.
  const auto rho = LevyIntensity::poisson_dirichlet(0.0, 1.0);
  const double oracle = test_support::integrate_unit_interval(
      [](double u, double) { return u * u * 2.0; });
  CHECK(oracle == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(rho.kappa(2, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("homogeneous beta phi is the harmonic-style finite sum") {
  for (double theta : {0.5, 1.0, 2.0, 5.0}) {
    const auto rho = LevyIntensity::homogeneous_beta(theta);
    for (int n = 1; n <= 50; ++n) {
      double sum = 0.0;
      for (int l = 1; l <= n; ++l) sum += theta / (theta + l - 1);
      CHECK(rho.phi(n) == sum);  // same working precision, exact match
    }
  }
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  CHECK(rho.phi(2) == doctest::Approx(1.5).epsilon(1e-14));
  const double oracle = phi_by_quadrature(
      [](double u, double omu) { return hb_density(1.0, u, omu); }, 2);
  CHECK(oracle == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("phi(1) equals one for every variant") {
  for (const auto& rho : test_intensities())
    CHECK(rho.phi(1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kappa(1,0) equals one for every variant") {
  for (const auto& rho : test_intensities())
    CHECK(rho.kappa(1, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pd_tail closed form and special cases") {
  // alpha = 0, theta = 1: tail over (1/2, 1) of 2 dv equals 1.
  const double oracle =
      test_support::integrate([](double) { return 2.0; }, 0.5, 1.0);
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pd_tail(0.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));

  // alpha = 0 reduces to (theta + 1) (1-u)^theta.
  for (double theta : {0.5, 1.0, 2.0})
    for (double u : {0.1, 0.5, 0.9})
      CHECK(pd_tail(0.0, theta, u) ==
            doctest::Approx((theta + 1.0) * std::pow(1.0 - u, theta))
                .epsilon(1e-12));

  // Tail vanishes at u = 1.
  CHECK(pd_tail(0.3, 1.0, 1.0) == 0.0);
}

TEST_CASE("pascal identity kappa(d,r) = kappa(d,r+1) + kappa(d+1,r)") {
  for (const auto& rho : test_intensities())
    for (int d = 1; d <= 10; ++d)
      for (int r = 0; r <= 10; ++r) {
        const double lhs = rho.kappa(d, r);
        const double rhs = rho.kappa(d, r + 1) + rho.kappa(d + 1, r);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
}

TEST_CASE("phi telescopes: phi(n+1) - phi(n) = kappa(1,n)") {
  for (const auto& rho : test_intensities())
    for (int n = 1; n <= 20; ++n) {
      const double diff = rho.phi(n + 1) - rho.phi(n);
      CHECK(diff == doctest::Approx(rho.kappa(1, n)).epsilon(1e-10));
    }
}

TEST_CASE("generic tail reproduces poisson-dirichlet closed forms") {
  // Same intensity through two routes: tail quadrature vs closed form.
  const auto closed = LevyIntensity::poisson_dirichlet(0.3, 1.0);
  const auto tail = LevyIntensity::generic_tail(
      [](double u) { return pd_tail(0.3, 1.0, u); });
  for (int d = 1; d <= 6; ++d)
    for (int r = 0; r <= 6; ++r)
      CHECK(tail.kappa(d, r) ==
            doctest::Approx(closed.kappa(d, r)).epsilon(1e-8));
  for (int n = 1; n <= 8; ++n)
    CHECK(tail.phi(n) == doctest::Approx(closed.phi(n)).epsilon(1e-8));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LevyIntensity::homogeneous_beta(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LevyIntensity::homogeneous_beta(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(LevyIntensity::poisson_dirichlet(1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(LevyIntensity::poisson_dirichlet(-0.1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(LevyIntensity::poisson_dirichlet(0.3, 0.0),
                  std::invalid_argument);
  const auto rho = LevyIntensity::homogeneous_beta(1.0);
  CHECK_THROWS_AS(rho.log_kappa(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(rho.log_kappa(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(rho.log_phi(0), std::invalid_argument);
}

TEST_CASE("precomputed table matches direct evaluation") {
  for (const auto& rho : {LevyIntensity::homogeneous_beta(0.7),
                          LevyIntensity::poisson_dirichlet(0.4, 1.3)}) {
    const ntrmix::KappaPhiTable table(rho, 8);
    for (int d = 1; d <= 9; ++d)
      for (int r = 0; r <= 8; ++r)
        CHECK(table.log_kappa(d, r) == rho.log_kappa(d, r));
    for (int n = 1; n <= 9; ++n)
      CHECK(table.log_phi(n) == rho.log_phi(n));
    CHECK_THROWS_AS(table.log_kappa(10, 0), std::out_of_range);
    CHECK_THROWS_AS(table.log_phi(10), std::out_of_range);
  }
}
