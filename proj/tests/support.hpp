#pragma once

// Test-side oracles: manufactured solutions, an independent two-point BVP
// solver and small grid helpers. Nothing here calls into the code under
// test except to read grid coordinates.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "athero/geometry.hpp"
#include "athero/solver_full.hpp"
#include "athero/solver_limit.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// u* = t sin(pi x1/ell) (1 + a cos theta), independent of xi.
struct Manufactured {
  double ell = 2.0;
  double eps = 0.05;
  double a = 0.5;

  double value(double x1, double theta, double t) const {
    return t * std::sin(pi * x1 / ell) * (1.0 + a * std::cos(theta));
  }
  /// du*/dt - d Lap u* on the shell at thickness coordinate xi.
  double shell_source(double d, double x1, double xi, double theta, double t) const {
    const double r = 1.0 + eps * xi;
    const double s = std::sin(pi * x1 / ell);
    const double k2 = (pi / ell) * (pi / ell);
    const double lap = t * (-k2 * s * (1.0 + a * std::cos(theta)) - s * a * std::cos(theta) / (r * r));
    return s * (1.0 + a * std::cos(theta)) - d * lap;
  }
  /// Same on the surface (r = 1).
  double surface_source(double d, double x1, double theta, double t) const {
    const double s = std::sin(pi * x1 / ell);
    const double k2 = (pi / ell) * (pi / ell);
    const double lap = t * (-k2 * s * (1.0 + a * std::cos(theta)) - s * a * std::cos(theta));
    return s * (1.0 + a * std::cos(theta)) - d * lap;
  }
};

/// Observed order from errors at spacings h (successive pairs, returns the last).
inline double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  return std::log(err[n - 2] / err[n - 1]) / std::log(h[n - 2] / h[n - 1]);
}

/// Finite-difference solution of  d W'' = g on (0,1),  W'(1) = 0,
/// with W(0) pinned to 0 and the mean removed afterwards (trapezoid rule
/// with the Euler-Maclaurin end correction). Returns nodal values on
/// n + 1 uniform nodes. The inner condition -d W'(0) = g is not imposed;
/// it follows from compatibility and is checked separately.
inline std::vector<double> neumann_bvp(double g, double d, int n) {
  const double h = 1.0 / n;
  const double rhs = g / d * h * h;
  // Unknowns W_1..W_n. Rows j = 1..n-1: W_{j-1} - 2 W_j + W_{j+1} = rhs;
  // row n (ghost W_{n+1} = W_{n-1}): 2 W_{n-1} - 2 W_n = rhs.
  std::vector<double> a(n + 1, 1.0), b(n + 1, -2.0), c(n + 1, 1.0), f(n + 1, rhs);
  a[1] = 0.0;  // W_0 = 0
  a[n] = 2.0;
  c[n] = 0.0;
  for (int j = 2; j <= n; ++j) {
    const double m = a[j] / b[j - 1];
    b[j] -= m * c[j - 1];
    f[j] -= m * f[j - 1];
  }
  std::vector<double> w(n + 1, 0.0);
  w[n] = f[n] / b[n];
  for (int j = n - 1; j >= 1; --j) w[j] = (f[j] - c[j] * w[j + 1]) / b[j];
  double mean = 0.5 * (w[0] + w[n]);
  for (int j = 1; j < n; ++j) mean += w[j];
  mean *= h;
  // Euler-Maclaurin: trapezoid - integral = h^2/12 (W'(1) - W'(0)).
  const double dw0 = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
  const double dw1 = (3.0 * w[n] - 4.0 * w[n - 1] + w[n - 2]) / (2.0 * h);
  mean -= h * h / 12.0 * (dw1 - dw0);
  for (double& x : w) x -= mean;
  return w;
}

inline double max_abs(const athero::Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
