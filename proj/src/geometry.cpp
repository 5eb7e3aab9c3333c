#include "athero/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace athero {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ShellGrid::ShellGrid(int n1, int nxi, int nth, double eps, double ell)
    : n1_(n1), nxi_(nxi), nth_(nth), eps_(eps), ell_(ell) {
  if (n1 < 3 || nxi < 3 || nth < 4) throw std::invalid_argument("shell grid needs n1 >= 3, nxi >= 3, nth >= 4");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("shell grid needs eps in (0,1)");
  if (!(ell > 0.0)) throw std::invalid_argument("shell grid needs ell > 0");
}

double ShellGrid::hth() const { return kTwoPi / nth_; }

SurfaceGrid::SurfaceGrid(int n1, int nth, double ell) : n1_(n1), nth_(nth), ell_(ell) {
  if (n1 < 3 || nth < 4) throw std::invalid_argument("surface grid needs n1 >= 3, nth >= 4");
  if (!(ell > 0.0)) throw std::invalid_argument("surface grid needs ell > 0");
}

double SurfaceGrid::hth() const { return kTwoPi / nth_; }

bool SurfaceGrid::matches(const ShellGrid& shell) const {
  return shell.n1() == n1_ && shell.nth() == nth_ && shell.ell() == ell_;
}

// ---------------------------------------------------------------------------

PatchMollifier::PatchMollifier(double cx1, double cth, double ax1, double ath, double plateau,
                               double plateau_fraction)
    : cx1_(cx1), cth_(cth), ax1_(ax1), ath_(ath), plateau_(plateau), inner_(plateau_fraction) {}

double PatchMollifier::taper(double s) const {
  s = std::abs(s);
  if (s >= 1.0) return 0.0;
  if (s <= inner_) return 1.0;
  const double z = (s - inner_) / (1.0 - inner_);
  const double c = std::cos(0.5 * std::numbers::pi * z);  // 0.5 (1 + cos(pi z)), accurate near z = 1
  return c * c;
}

double PatchMollifier::operator()(double x1, double theta) const {
  if (plateau_ == 0.0) return 0.0;
  return plateau_ * taper((x1 - cx1_) / ax1_) * taper((theta - cth_) / ath_);
}

PatchMollifier make_mollifier(double cx1, double cth, double ax1, double ath, double ell, double plateau,
                              double plateau_fraction) {
  if (!(ax1 > 0.0 && ath > 0.0)) throw std::invalid_argument("patch half-widths must be positive");
  if (!(cx1 - ax1 > 0.0 && cx1 + ax1 < ell)) throw std::invalid_argument("patch leaves (0, ell) in x1");
  if (!(cth - ath > 0.0 && cth + ath < kTwoPi)) throw std::invalid_argument("patch leaves (0, 2pi) in theta");
  if (!(plateau >= 0.0 && plateau <= 1.0)) throw std::invalid_argument("patch plateau must lie in [0,1]");
  if (!(plateau_fraction >= 0.0 && plateau_fraction < 1.0))
    throw std::invalid_argument("plateau fraction must lie in [0,1)");
  return {cx1, cth, ax1, ath, plateau, plateau_fraction};
}

Mollifiers Mollifiers::from(const PatchSettings& p, double ell) {
  const double cx = p.center_x1_frac * ell;
  return {make_mollifier(cx, p.center_theta, p.omega_half_x1_frac * ell, p.omega_half_theta, ell, p.plateau),
          make_mollifier(cx, p.center_theta, p.Omega_half_x1_frac * ell, p.Omega_half_theta, ell, p.plateau)};
}

double time_ramp(double t, double ramp_time) {
  if (t <= 0.0) return 0.0;
  if (t >= ramp_time) return 1.0;
  return 0.5 * (1.0 - std::cos(std::numbers::pi * t / ramp_time));
}

Forcings::Forcings(const ForcingSettings& settings, double ell, PatchMollifier phi1)
    : settings_(settings), ell_(ell), phi1_(phi1) {
  if (settings.c2 < 0.0) throw std::invalid_argument("oxidation amplitude c2 must be nonnegative");
  if (settings.psi0 < 0.0) throw std::invalid_argument("LDL source amplitude psi0 must be nonnegative");
}

double Forcings::theta_shape(double x1) const {
  if (settings_.c2 == 0.0 || x1 <= 0.0 || x1 >= ell_) return 0.0;
  return settings_.c2 * std::sin(std::numbers::pi * x1 / ell_);
}

double Forcings::psi_shape(double x1, double theta) const {
  if (settings_.psi0 == 0.0) return 0.0;
  return settings_.psi0 * phi1_(x1, theta);
}

// ---------------------------------------------------------------------------

ShellLaplacian::ShellLaplacian(const ShellGrid& grid, X1Closure closure) : grid_(grid), closure_(closure) {
  const int n = grid.nxi();
  const double e = grid.eps();
  const double h = grid.hxi();
  const double hth = grid.hth();
  const double second = 1.0 / (e * e * h * h);
  lower_.resize(n);
  centre_.resize(n);
  upper_.resize(n);
  theta_coeff_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double r = grid.radius(j);
    const double first = 1.0 / (e * r * 2.0 * h);
    centre_[j] = -2.0 * second;
    if (j == 0) {
      lower_[j] = 0.0;
      upper_[j] = 2.0 * second;
    } else if (j == n - 1) {
      lower_[j] = 2.0 * second;
      upper_[j] = 0.0;
    } else {
      lower_[j] = second - first;
      upper_[j] = second + first;
    }
    theta_coeff_[j] = 1.0 / (r * r * hth * hth);
  }
  inner_weight_ = -2.0 / (e * e * h) + 1.0 / (e * grid.radius(0));
  outer_weight_ = 2.0 / (e * e * h) + 1.0 / (e * grid.radius(n - 1));
}

void ShellLaplacian::apply(std::span<const double> u, std::span<double> out, std::span<const double> inner_dxi,
                           std::span<const double> outer_dxi) const {
  const auto& g = grid_;
  if (u.size() != g.size() || out.size() != g.size()) throw std::invalid_argument("field size mismatch");
  const int n1 = g.n1();
  const int nxi = g.nxi();
  const int nth = g.nth();
  const double c1 = 1.0 / (g.h1() * g.h1());
  const bool dirichlet = closure_ == X1Closure::Dirichlet;

  for (int k = 0; k < nth; ++k) {
    const int km = (k + nth - 1) % nth;
    const int kp = (k + 1) % nth;
    for (int i = 0; i < n1; ++i) {
      const std::size_t surf = static_cast<std::size_t>(k) * n1 + i;
      if (dirichlet && (i == 0 || i == n1 - 1)) {
        for (int j = 0; j < nxi; ++j) out[g.index(i, j, k)] = 0.0;
        continue;
      }
      const int im = i == 0 ? 1 : i - 1;
      const int ip = i == n1 - 1 ? n1 - 2 : i + 1;
      for (int j = 0; j < nxi; ++j) {
        const double uc = u[g.index(i, j, k)];
        double acc = c1 * (u[g.index(im, j, k)] - 2.0 * uc + u[g.index(ip, j, k)]);
        acc += theta_coeff_[j] * (u[g.index(i, j, km)] - 2.0 * uc + u[g.index(i, j, kp)]);
        acc += centre_[j] * uc;
        if (j > 0) acc += lower_[j] * u[g.index(i, j - 1, k)];
        if (j < nxi - 1) acc += upper_[j] * u[g.index(i, j + 1, k)];
        if (j == 0 && !inner_dxi.empty()) acc += inner_weight_ * inner_dxi[surf];
        if (j == nxi - 1 && !outer_dxi.empty()) acc += outer_weight_ * outer_dxi[surf];
        out[g.index(i, j, k)] = acc;
      }
    }
  }
}

ShellGrid policy_grid(double ell, double eps, double eps_min, int nxi) {
  const double h = std::sqrt(0.1 * eps_min);
  const int n1 = static_cast<int>(std::ceil(ell / h)) + 1;
  int nth = static_cast<int>(std::ceil(kTwoPi / h));
  nth = ((nth + 3) / 4) * 4;
  return {std::max(n1, 3), nxi, std::max(nth, 4), eps, ell};
}

ShellGrid scenario_grid(const Scenario& s) {
  const ShellGrid policy = policy_grid(s.model.ell, s.model.eps, s.model.eps, s.grid.nxi);
  const int n1 = s.grid.n1 > 0 ? s.grid.n1 : policy.n1();
  const int nth = s.grid.nth > 0 ? s.grid.nth : policy.nth();
  return {n1, s.grid.nxi, nth, s.model.eps, s.model.ell};
}

}  // namespace athero
