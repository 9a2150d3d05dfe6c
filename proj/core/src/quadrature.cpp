// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "ntrmix/numeric.hpp"

namespace ntrmix {

namespace {

// QUADPACK dqk15 abscissae and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kKronrodNodes[i]);
    fv[14 - i] = f(center + half * kKronrodNodes[i]);
  }
  fv[7] = f(center);
  for (double v : fv) {
    if (!std::isfinite(v))
      throw numeric_error("quadrature: non-finite integrand value");
  }

  double kronrod = kKronrodWeights[7] * fv[7];
  for (int i = 0; i < 7; ++i)
    kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);

  // Gauss-7 nodes are the odd-index Kronrod nodes.
  double gauss = kGaussWeights[3] * fv[7];
  for (int i = 0; i < 3; ++i)
    gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

  return Panel{a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

}  // namespace

double integrate_segments(const std::function<double(double)>& f,
                          std::span<const double> segments,
                          const QuadratureOptions& opts) {
  if (segments.size() < 2)
    throw std::invalid_argument("integrate_segments: need at least one segment");

  std::priority_queue<Panel> queue;
  double total = 0.0;
  double err = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    if (!(segments[i] < segments[i + 1]))
      throw std::invalid_argument("integrate_segments: segments must increase");
    Panel p = evaluate_panel(f, segments[i], segments[i + 1]);
    total += p.value;
    err += p.error;
    queue.push(p);
    ++panels;
  }

  auto tolerance = [&](double value) {
    return std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
  };

  while (err > tolerance(total) && panels < opts.max_panels) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval narrowed to machine resolution; keep its estimate and
      // retire its error contribution.
      err -= worst.error;
      worst.error = 0.0;
      queue.push(worst);
      continue;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  const double accept =
      std::max(opts.abs_tol, opts.accept_rel_tol * std::abs(total));
  if (err > accept)
    throw numeric_error("quadrature: failed to converge to tolerance");
  if (!std::isfinite(total))
    throw numeric_error("quadrature: non-finite result");
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  const double segments[2] = {a, b};
  return integrate_segments(f, segments, opts);
}

}  // namespace ntrmix
