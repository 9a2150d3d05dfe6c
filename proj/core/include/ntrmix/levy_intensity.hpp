// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <concepts>
#include <functional>
#include <vector>

namespace ntrmix {

/// A homogeneous Levy intensity rho(du) on (0,1), normalized so that
/// the first moment integral of u is 1. Every partition probability in the
/// library is assembled from two scalar functionals of rho:
///
///   kappa(d, r) = integral of u^d (1-u)^r rho(du)   over (0,1)
///   phi(n)      = integral of 1 - (1-u)^n  rho(du)  over (0,1)
///
/// Normalization means kappa(1,0) = phi(1) = 1. Both functionals are
/// computed and stored in log space; products of many kappas underflow
/// otherwise.
class LevyIntensity {
 public:
  /// rho(du) = theta u^{-1} (1-u)^{theta-1} du, theta > 0.
  /// kappa has the closed form theta * B(d, r + theta); phi(n) is the
  /// finite sum of theta / (theta + l - 1) over l = 1..n.
  static LevyIntensity homogeneous_beta(double theta);

  /// The intensity whose partition law is the two-parameter (alpha, theta)
  /// Poisson-Dirichlet family, 0 <= alpha < 1, theta > 0. alpha = 0 is the
  /// Dirichlet-process case and needs no special handling.
  static LevyIntensity poisson_dirichlet(double alpha, double theta);

  /// An intensity given only through its tail mass T(u) = rho((u,1)).
  /// kappa and phi are evaluated by adaptive quadrature of the tail form
  ///   integral of (d/du)[u^d (1-u)^r] T(u) du
  /// with endpoint splits at 1e-12 and 1 - 1e-12. The caller is responsible
  /// for T satisfying the normalization (kappa(1,0) = 1 is testable).
  static LevyIntensity generic_tail(std::function<double(double)> tail_mass);

  double log_kappa(int d, int r) const;
  double log_phi(int n) const;

  double kappa(int d, int r) const;
  double phi(int n) const;

 private:
  LevyIntensity() = default;

  enum class Kind { kHomogeneousBeta, kPoissonDirichlet, kGenericTail };
  Kind kind_ = Kind::kHomogeneousBeta;
  double theta_ = 1.0;
  double alpha_ = 0.0;
  std::function<double(double)> tail_;
};

/// Tail mass of the Poisson-Dirichlet intensity at u in (0,1]:
///   Gamma(theta+2-alpha) / (Gamma(1-alpha) Gamma(1+theta)) u^{-alpha} (1-u)^theta
double pd_tail(double alpha, double theta, double u);

/// Precomputed log kappa / log phi values shared immutably across workers.
/// Covers d in [1, n_max + 1], r in [0, n_max], n in [1, n_max + 1] -- the
/// ranges one pass of sequential seating over n_max customers touches.
class KappaPhiTable {
 public:
  KappaPhiTable(const LevyIntensity& rho, int n_max);

  double log_kappa(int d, int r) const;
  double log_phi(int n) const;
  int n_max() const { return n_max_; }

 private:
  int n_max_ = 0;
  std::vector<double> log_kappa_;  // (d-1) * (n_max+1) + r
  std::vector<double> log_phi_;    // n - 1
};

template <typename R>
concept KappaPhiProvider = requires(const R& rho, int d, int r, int n) {
  { rho.log_kappa(d, r) } -> std::convertible_to<double>;
  { rho.log_phi(n) } -> std::convertible_to<double>;
};

}  // namespace ntrmix
