#pragma once

// Grids for the thin shell and its limit surface, endothelial patch
// mollifiers, the forcing fields and the scaled cylindrical Laplacian.

#include <cstddef>
#include <span>
#include <vector>

#include "athero/params.hpp"

namespace athero {

using Field = std::vector<double>;

/// Uniform grid on (x1, xi, theta) in [0,ell] x [0,1] x [0,2pi), with
/// xi = (r-1)/eps the scaled thickness coordinate. Theta is periodic.
///
/// Storage order is theta slowest, xi fastest: index = (k*n1 + i)*nxi + j.
class ShellGrid {
 public:
  ShellGrid(int n1, int nxi, int nth, double eps, double ell);

  [[nodiscard]] int n1() const { return n1_; }
  [[nodiscard]] int nxi() const { return nxi_; }
  [[nodiscard]] int nth() const { return nth_; }
  [[nodiscard]] double eps() const { return eps_; }
  [[nodiscard]] double ell() const { return ell_; }
  [[nodiscard]] double h1() const { return ell_ / (n1_ - 1); }
  [[nodiscard]] double hxi() const { return 1.0 / (nxi_ - 1); }
  [[nodiscard]] double hth() const;

  [[nodiscard]] double x1(int i) const { return i * h1(); }
  [[nodiscard]] double xi(int j) const { return j * hxi(); }
  [[nodiscard]] double theta(int k) const { return k * hth(); }
  [[nodiscard]] double radius(int j) const { return 1.0 + eps_ * xi(j); }

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n1_) * nxi_ * nth_; }
  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * n1_ + i) * nxi_ + j;
  }
  [[nodiscard]] Field zeros() const { return Field(size(), 0.0); }

 private:
  int n1_;
  int nxi_;
  int nth_;
  double eps_;
  double ell_;
};

/// The (x1, theta) footprint of a ShellGrid at r = 1; index = k*n1 + i.
class SurfaceGrid {
 public:
  SurfaceGrid(int n1, int nth, double ell);
  explicit SurfaceGrid(const ShellGrid& shell) : SurfaceGrid(shell.n1(), shell.nth(), shell.ell()) {}

  [[nodiscard]] int n1() const { return n1_; }
  [[nodiscard]] int nth() const { return nth_; }
  [[nodiscard]] double ell() const { return ell_; }
  [[nodiscard]] double h1() const { return ell_ / (n1_ - 1); }
  [[nodiscard]] double hth() const;
  [[nodiscard]] double x1(int i) const { return i * h1(); }
  [[nodiscard]] double theta(int k) const { return k * hth(); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n1_) * nth_; }
  [[nodiscard]] std::size_t index(int i, int k) const { return static_cast<std::size_t>(k) * n1_ + i; }
  [[nodiscard]] Field zeros() const { return Field(size(), 0.0); }

  [[nodiscard]] bool matches(const ShellGrid& shell) const;

 private:
  int n1_;
  int nth_;
  double ell_;
};

/// Smooth bump supported on a rectangular patch of the inner surface.
///
/// Per axis the taper is 1 for |s| <= plateau_fraction, falls off as a
/// half cosine and vanishes for |s| >= 1, with s the offset from the
/// center in units of the half-width. The taper is C^1 everywhere.
class PatchMollifier {
 public:
  PatchMollifier() = default;
  PatchMollifier(double cx1, double cth, double ax1, double ath, double plateau, double plateau_fraction);

  [[nodiscard]] double operator()(double x1, double theta) const;
  [[nodiscard]] double center_x1() const { return cx1_; }
  [[nodiscard]] double center_theta() const { return cth_; }
  [[nodiscard]] double half_x1() const { return ax1_; }
  [[nodiscard]] double half_theta() const { return ath_; }
  [[nodiscard]] double plateau() const { return plateau_; }

 private:
  [[nodiscard]] double taper(double s) const;

  double cx1_ = 0.0;
  double cth_ = 0.0;
  double ax1_ = 1.0;
  double ath_ = 1.0;
  double plateau_ = 0.0;
  double inner_ = 0.5;
};

/// Builds a mollifier; throws std::invalid_argument unless the patch lies
/// strictly inside (0,ell) x (0,2pi).
[[nodiscard]] PatchMollifier make_mollifier(double cx1, double cth, double ax1, double ath, double ell,
                                            double plateau = 1.0, double plateau_fraction = 0.5);

struct Mollifiers {
  PatchMollifier phi1;  // supported in omega_1
  PatchMollifier phi2;  // supported in Omega_1

  [[nodiscard]] static Mollifiers from(const PatchSettings& patches, double ell);
  [[nodiscard]] static Mollifiers none() { return {}; }
};

/// Smooth C^1 ramp: 0 at t = 0, 1 for t >= ramp_time.
[[nodiscard]] double time_ramp(double t, double ramp_time);

/// Theta = c2 sin(pi x1/ell) ramp(t), psi = psi0 phi1(x1,theta) ramp(t).
/// Both are independent of the thickness coordinate.
class Forcings {
 public:
  Forcings(const ForcingSettings& settings, double ell, PatchMollifier phi1);

  [[nodiscard]] double theta_shape(double x1) const;
  [[nodiscard]] double psi_shape(double x1, double theta) const;
  [[nodiscard]] double ramp(double t) const { return time_ramp(t, settings_.ramp_time); }
  [[nodiscard]] double oxidation(double x1, double theta_angle, double t) const {
    (void)theta_angle;
    return theta_shape(x1) * ramp(t);
  }
  [[nodiscard]] double source(double x1, double theta_angle, double t) const {
    return psi_shape(x1, theta_angle) * ramp(t);
  }
  [[nodiscard]] const ForcingSettings& settings() const { return settings_; }

 private:
  ForcingSettings settings_;
  double ell_;
  PatchMollifier phi1_;
};

enum class X1Closure { Dirichlet, Neumann };

/// Second-order finite-difference form of
///   d2/dx1^2 + eps^-2 d2/dxi^2 + (eps r)^-1 d/dxi + r^-2 d2/dtheta^2,
/// r = 1 + eps xi, periodic in theta. The xi = 0 and xi = 1 rows use
/// ghost-value elimination with a prescribed normal derivative d/dxi.
class ShellLaplacian {
 public:
  ShellLaplacian(const ShellGrid& grid, X1Closure closure = X1Closure::Dirichlet);

  /// out = L u. `inner_dxi` / `outer_dxi` give du/dxi at xi = 0 / xi = 1 on
  /// the surface index (k*n1 + i); empty spans mean homogeneous Neumann.
  /// Dirichlet x1 end rows are written as 0.
  void apply(std::span<const double> u, std::span<double> out, std::span<const double> inner_dxi = {},
             std::span<const double> outer_dxi = {}) const;

  /// xi-direction coefficients at node j: out = lower*u[j-1] + centre*u[j] + upper*u[j+1]
  /// (ghost already folded in at j = 0 and j = nxi-1).
  [[nodiscard]] double xi_lower(int j) const { return lower_[j]; }
  [[nodiscard]] double xi_centre(int j) const { return centre_[j]; }
  [[nodiscard]] double xi_upper(int j) const { return upper_[j]; }
  [[nodiscard]] double theta_coeff(int j) const { return theta_coeff_[j]; }
  /// Weight multiplying du/dxi at xi = 0 in the folded boundary row.
  [[nodiscard]] double inner_flux_weight() const { return inner_weight_; }
  [[nodiscard]] double outer_flux_weight() const { return outer_weight_; }

  [[nodiscard]] const ShellGrid& grid() const { return grid_; }
  [[nodiscard]] X1Closure closure() const { return closure_; }

 private:
  ShellGrid grid_;
  X1Closure closure_;
  std::vector<double> lower_, centre_, upper_, theta_coeff_;
  double inner_weight_ = 0.0;
  double outer_weight_ = 0.0;
};

/// Refinement policy: uniform spacing h with h^2 <= 0.1 eps_min in x1 and
/// theta, nth rounded up to a multiple of 4.
[[nodiscard]] ShellGrid policy_grid(double ell, double eps, double eps_min, int nxi);

/// Grid from scenario settings, filling unset node counts from the policy.
[[nodiscard]] ShellGrid scenario_grid(const Scenario& scenario);

}  // namespace athero
