#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "athero/geometry.hpp"
#include "athero/spectral.hpp"
#include "support.hpp"

using namespace athero;
using oracle::pi;

TEST_CASE("shell grid layout") {
  const ShellGrid g(5, 3, 8, 0.1, 2.0);
  CHECK(g.size() == 120u);
  CHECK(g.h1() == doctest::Approx(0.5));
  CHECK(g.hxi() == doctest::Approx(0.5));
  CHECK(g.hth() == doctest::Approx(pi / 4.0));
  CHECK(g.index(1, 2, 3) == (3u * 5u + 1u) * 3u + 2u);
  CHECK(g.radius(0) == 1.0);
  CHECK(g.radius(2) == doctest::Approx(1.1));
  CHECK_THROWS_AS(ShellGrid(2, 3, 8, 0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ShellGrid(5, 3, 8, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ShellGrid(5, 3, 2, 0.1, 2.0), std::invalid_argument);

  const SurfaceGrid s(g);
  CHECK(s.matches(g));
  CHECK(s.size() == 40u);
  CHECK_FALSE(SurfaceGrid(5, 16, 2.0).matches(g));
}

TEST_CASE("refinement policy") {
  const ShellGrid g = policy_grid(2.0, 0.1, 0.025, 9);
  CHECK(g.h1() * g.h1() <= 0.1 * 0.025 + 1e-15);
  CHECK(g.hth() * g.hth() <= 0.1 * 0.025 + 1e-15);
  CHECK(g.nth() % 4 == 0);
  CHECK(g.nxi() == 9);
  CHECK(g.eps() == 0.1);
}

TEST_CASE("mollifier values") {
  const PatchMollifier phi = make_mollifier(1.0, pi, 0.25, pi / 4.0, 2.0);
  CHECK(phi(1.0, pi) == 1.0);
  CHECK(phi(1.1, pi + 0.1) == 1.0);  // inner plateau
  CHECK(phi(1.3, pi) == 0.0);
  CHECK(phi(1.0, pi + pi / 4.0) == 0.0);
  CHECK(phi(0.0, 0.0) == 0.0);
  const double mid = phi(1.0 + 0.75 * 0.25, pi);  // halfway down the taper
  CHECK(mid == doctest::Approx(0.5).epsilon(1e-14));

  const PatchMollifier half = make_mollifier(1.0, pi, 0.25, pi / 4.0, 2.0, 0.6);
  CHECK(half(1.0, pi) == doctest::Approx(0.6));

  CHECK_THROWS_AS((void)make_mollifier(0.1, pi, 0.25, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_mollifier(1.0, 0.3, 0.25, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_mollifier(1.0, pi, 0.25, 0.5, 2.0, 1.5), std::invalid_argument);
}

TEST_CASE("mollifier is C1 across the patch edge") {
  const double a = 0.25;
  const PatchMollifier phi = make_mollifier(1.0, pi, a, pi / 4.0, 2.0);
  const double edge = 1.0 + a;
  auto central = [&](double h) { return (phi(edge + h, pi) - phi(edge - h, pi)) / (2.0 * h); };
  // Inside the edge the taper is sin^2(pi h / a), so the central difference
  // is at most (pi/a)^2 h / 2 and vanishes linearly.
  for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
    CAPTURE(h);
    CHECK(std::abs(central(h)) <= 0.5 * (pi / a) * (pi / a) * h);
  }
  // Richardson extrapolation of the central difference to h -> 0.
  const double h = 1e-6;
  CHECK(std::abs(2.0 * central(h / 2.0) - central(h)) < 1e-12);
  // Same along theta.
  const double tedge = pi + pi / 4.0;
  auto ct = [&](double k) { return (phi(1.0, tedge + k) - phi(1.0, tedge - k)) / (2.0 * k); };
  CHECK(std::abs(2.0 * ct(h / 2.0) - ct(h)) < 1e-12);
}

TEST_CASE("mollifiers stay in [0,1] on any grid") {
  const Mollifiers m = Mollifiers::from(PatchSettings{}, 2.0);
  for (int n : {7, 16, 33, 101}) {
    const SurfaceGrid g(n, 2 * n, 2.0);
    for (int k = 0; k < g.nth(); ++k) {
      for (int i = 0; i < g.n1(); ++i) {
        for (const auto* p : {&m.phi1, &m.phi2}) {
          const double v = (*p)(g.x1(i), g.theta(k));
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        }
        // supp(phi1) lies inside Omega, where phi2 > 0.
        if (m.phi1(g.x1(i), g.theta(k)) > 0.0) CHECK(m.phi2(g.x1(i), g.theta(k)) > 0.0);
      }
    }
  }
}

TEST_CASE("forcing fields") {
  const Mollifiers m = Mollifiers::from(PatchSettings{}, 2.0);
  const ForcingSettings fs{0.8, 1.0, 0.2};
  const Forcings f(fs, 2.0, m.phi1);
  CHECK(f.oxidation(1.0, 0.0, 0.0) == 0.0);
  CHECK(f.source(1.0, pi, 0.0) == 0.0);
  CHECK(f.oxidation(0.0, 1.0, 0.5) == 0.0);
  CHECK(f.oxidation(2.0, 1.0, 0.5) == 0.0);
  CHECK(f.oxidation(1.0, 1.0, 0.5) == doctest::Approx(0.8));
  CHECK(f.source(1.0, pi, 0.5) == doctest::Approx(1.0));
  CHECK(f.source(0.3, pi, 0.5) == 0.0);  // outside omega
  CHECK(time_ramp(0.1, 0.2) == doctest::Approx(0.5));
  CHECK(time_ramp(0.3, 0.2) == 1.0);
  for (int n = 0; n <= 100; ++n) {
    const double x = 2.0 * n / 100.0;
    for (double t : {0.05, 0.1, 1.0}) {
      const double th = f.oxidation(x, 0.0, t);
      CHECK(th >= 0.0);
      CHECK(th <= fs.c2);
      CHECK(f.source(x, pi, t) >= 0.0);
    }
  }
  CHECK_THROWS_AS(Forcings(ForcingSettings{0.8, -1.0, 0.2}, 2.0, m.phi1), std::invalid_argument);
}

TEST_CASE("laplacian annihilates constants under Neumann closure") {
  const ShellGrid g(9, 5, 12, 0.1, 2.0);
  const ShellLaplacian lap(g, X1Closure::Neumann);
  const Field u(g.size(), 3.7);
  Field out(g.size());
  lap.apply(u, out);
  CHECK(oracle::max_abs(out) < 1e-9);  // row sums vanish; values of order 1e4 * 3.7 cancel
  // Row sums of the xi stencil.
  for (int j = 0; j < g.nxi(); ++j) {
    CHECK(lap.xi_lower(j) + lap.xi_centre(j) + lap.xi_upper(j) == doctest::Approx(0.0).scale(1e4));
  }
}

TEST_CASE("laplacian of cos(theta) converges at second order") {
  // L cos(theta) = -cos(theta) / r^2 with r = 1 + eps xi.
  const double eps = 0.1;
  std::vector<double> h, err;
  for (int nth : {16, 32, 64}) {
    const ShellGrid g(5, 3, nth, eps, 1.0);
    const double r = 1.0 + eps * g.xi(1);
    const ShellLaplacian lap(g, X1Closure::Neumann);
    Field u(g.size()), out(g.size());
    for (int k = 0; k < nth; ++k)
      for (int i = 0; i < g.n1(); ++i)
        for (int j = 0; j < g.nxi(); ++j) u[g.index(i, j, k)] = std::cos(g.theta(k));
    lap.apply(u, out);
    double e = 0.0;
    for (int k = 0; k < nth; ++k) e = std::max(e, std::abs(out[g.index(2, 1, k)] + std::cos(g.theta(k)) / (r * r)));
    h.push_back(g.hth());
    err.push_back(e);
  }
  CHECK(err.back() < 2e-3);
  CHECK(oracle::observed_order(h, err) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("laplacian of sin(pi x1/ell) xi^2 converges at second order") {
  const double ell = 2.0, eps = 0.1;
  std::vector<double> h, err;
  for (int n1 : {9, 17, 33, 65}) {
    const ShellGrid g(n1, 5, 8, eps, ell);
    const ShellLaplacian lap(g, X1Closure::Dirichlet);
    Field u(g.size()), out(g.size()), outer(SurfaceGrid(g).size());
    for (int k = 0; k < g.nth(); ++k) {
      for (int i = 0; i < n1; ++i) {
        const double s = std::sin(pi * g.x1(i) / ell);
        outer[static_cast<std::size_t>(k) * n1 + i] = 2.0 * s;  // d/dxi at xi = 1
        for (int j = 0; j < g.nxi(); ++j) u[g.index(i, j, k)] = s * g.xi(j) * g.xi(j);
      }
    }
    lap.apply(u, out, {}, outer);
    double e = 0.0;
    for (int k = 0; k < g.nth(); ++k) {
      for (int i = 1; i < n1 - 1; ++i) {
        const double s = std::sin(pi * g.x1(i) / ell);
        for (int j = 0; j < g.nxi(); ++j) {
          const double xi = g.xi(j), r = g.radius(j);
          const double exact = -(pi / ell) * (pi / ell) * s * xi * xi + 2.0 * s / (eps * eps) + 2.0 * xi * s / (eps * r);
          e = std::max(e, std::abs(out[g.index(i, j, k)] - exact));
        }
      }
    }
    h.push_back(g.h1());
    err.push_back(e);
  }
  CHECK(oracle::observed_order(h, err) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("inner flux data enters the xi = 0 row") {
  // u = xi (1 - xi/2): du/dxi = 1 at xi = 0 and 0 at xi = 1; L u = -1/eps^2 + (1 - xi)/(eps r).
  const double eps = 0.2;
  const ShellGrid g(5, 7, 8, eps, 1.0);
  const ShellLaplacian lap(g, X1Closure::Neumann);
  Field u(g.size()), out(g.size());
  const Field inner(SurfaceGrid(g).size(), 1.0);
  for (int k = 0; k < g.nth(); ++k)
    for (int i = 0; i < g.n1(); ++i)
      for (int j = 0; j < g.nxi(); ++j) u[g.index(i, j, k)] = g.xi(j) * (1.0 - 0.5 * g.xi(j));
  lap.apply(u, out, inner);
  for (int j = 0; j < g.nxi(); ++j) {
    const double exact = -1.0 / (eps * eps) + (1.0 - g.xi(j)) / (eps * g.radius(j));
    CHECK(out[g.index(2, j, 3)] == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("implicit operators invert (I - dt d L)") {
  const ShellGrid g(11, 5, 12, 0.1, 2.0);
  for (auto closure : {X1Closure::Dirichlet, X1Closure::Neumann}) {
    ShellImplicitOperator op(g, 0.7, 0.01, closure);
    Field b(g.size());
    for (std::size_t n = 0; n < b.size(); ++n) b[n] = std::sin(0.37 * static_cast<double>(n)) + 1.0;
    if (closure == X1Closure::Dirichlet) {
      for (int k = 0; k < g.nth(); ++k)
        for (int j = 0; j < g.nxi(); ++j) b[g.index(0, j, k)] = b[g.index(g.n1() - 1, j, k)] = 0.0;
    }
    Field u = b;
    op.solve(u);
    CHECK(op.relative_residual(u, b) < 1e-12);

    // Residual by hand from the explicit operator.
    const ShellLaplacian lap(g, closure);
    Field lu(g.size());
    lap.apply(u, lu);
    double worst = 0.0;
    for (int k = 0; k < g.nth(); ++k)
      for (int i = 1; i < g.n1() - 1; ++i)
        for (int j = 0; j < g.nxi(); ++j) {
          const std::size_t n = g.index(i, j, k);
          worst = std::max(worst, std::abs(u[n] - 0.01 * 0.7 * lu[n] - b[n]));
        }
    CHECK(worst < 1e-11);
  }

  const SurfaceGrid s(9, 16, 2.0);
  SurfaceImplicitOperator sop(s, 1.3, 0.02);
  Field b(s.size());
  for (std::size_t n = 0; n < b.size(); ++n) b[n] = std::cos(0.11 * static_cast<double>(n));
  for (int k = 0; k < s.nth(); ++k) b[s.index(0, k)] = b[s.index(s.n1() - 1, k)] = 0.0;
  Field v = b;
  sop.solve(v);
  CHECK(sop.relative_residual(v, b) < 1e-12);
}
