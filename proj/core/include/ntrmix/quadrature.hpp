// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <functional>
#include <span>

namespace ntrmix {

struct QuadratureOptions {
  double rel_tol = 1e-12;        // refinement target
  double accept_rel_tol = 1e-10; // convergence contract; exceeding it throws
  double abs_tol = 1e-300;
  int max_panels = 4096;
};

// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over the union
// of [segments[i], segments[i+1]]. Panels are bisected worst-error-first
// until the summed error estimate meets tolerance. Throws numeric_error on
// non-convergence or a non-finite integrand evaluation.
double integrate_segments(const std::function<double(double)>& f,
                          std::span<const double> segments,
                          const QuadratureOptions& opts = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace ntrmix
