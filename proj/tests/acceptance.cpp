// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "athero/harness.hpp"
#include "athero/kinetics.hpp"
#include "support.hpp"

using namespace athero;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(const char* id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sig3(double x) {
  const double e = std::floor(std::log10(std::abs(x)));
  const double scale = std::pow(10.0, 2.0 - e);
  return std::round(x * scale) / scale;
}

void eps_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepReport r = sweep_eps(Scenario{}, SweepOptions{});
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& rec : r.records)
    std::printf("  eps=%.4g sup=%.4e grad=%.4e runtime=%.2fs%s%s\n", rec.eps, rec.sup_max(), rec.grad_total(),
                rec.runtime_s(), rec.failure.empty() ? "" : " failure=", rec.failure.c_str());
  const bool ok = r.complete() && r.fitted;
  report("AC1", ok && r.sup_fit.slope >= 0.8 && r.sup_fit.slope <= 1.3 && r.sup_fit.r2 >= 0.95 && wall < 600.0,
         fmt("sup order %.3f, R2 %.4f, C0 %.3g, wall %.1fs", r.sup_fit.slope, r.sup_fit.r2, r.C0, wall));
  report("AC2", ok && r.grad_fit.slope >= 1.2 && r.grad_fit.slope <= 1.8,
         fmt("gradient order %.3f, R2 %.4f", r.grad_fit.slope, r.grad_fit.r2));
}

void corrector() {
  const int n = 10000;
  double bvp = 0.0;
  for (double g : {1.0, 0.37, 2.5}) {
    for (double d : {1.0, 0.5, 0.1}) {
      const std::vector<double> w = oracle::neumann_bvp(g, d, n);
      for (int j = 0; j <= n; ++j)
        bvp = std::max(bvp, std::abs(w[j] - g / d * Corrector::profile(static_cast<double>(j) / n)));
    }
  }
  const double a = std::sqrt(3.0 / 5.0);
  const double mean = std::abs(5.0 * Corrector::profile(0.5 * (1 - a)) + 8.0 * Corrector::profile(0.5) +
                               5.0 * Corrector::profile(0.5 * (1 + a))) /
                      18.0;

  Scenario sc;
  sc.grid.n1 = 33;
  sc.grid.nth = 32;
  const ScenarioSetup s = setup(sc);
  const ShellGrid& shell = s.grid;
  const SurfaceGrid g(shell);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 2.0);
  LimitState v = LimitState::zeros(g);
  for (auto& f : v.v)
    for (double& x : f) x = U(rng);
  const FieldState R = assemble_R(v, eval_corrector(v, g, s.params, s.mollifiers), shell);
  const double eps = shell.eps(), hxi = shell.hxi();
  double flux = 0.0;
  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < g.n1(); ++i) {
      const std::size_t q = g.index(i, k);
      StateVec6 vq;
      for (int sp = 0; sp < kSpecies; ++sp) vq[sp] = v.v[sp][q];
      const double x1 = g.x1(i), th = g.theta(k);
      const StateVec6 gl = eval_G_limit(vq, s.mollifiers.phi1(x1, th), s.mollifiers.phi2(x1, th), s.params);
      for (int sp : {0, 2, 3}) {
        const double r0 = R.u[sp][shell.index(i, 0, k)];
        const double r1 = R.u[sp][shell.index(i, 1, k)];
        const double r2 = R.u[sp][shell.index(i, 2, k)];
        const double dr = (-3.0 * r0 + 4.0 * r1 - r2) / (2.0 * hxi) / eps;
        flux = std::max(flux, std::abs(-s.params.diffusion(sp) * dr - eps * gl[sp]));
      }
    }
  }
  report("AC3", bvp < 1e-8 && mean < 1e-14 && flux < 1e-12,
         fmt("max |W - W_fd| %.2e, |mean| %.2e, flux residual %.2e", bvp, mean, flux));
}

void positivity() {
  Scenario sc;
  sc.model.eps = 0.05;
  const ScenarioSetup s = setup(sc);
  const FullSolution full = run_full(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  const FullSolution upper = run_upper(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  const SandwichReport sw = check_sandwich(full, upper);
  double over = 0.0;
  for (double x : sw.max_over) over = std::max(over, x);
  report("AC4", full.min_value >= -1e-10 && sw.pass(),
         fmt("min u %.3e, max(u - u_upper) %.3e, grid %dx%dx%d", full.min_value, over, s.grid.n1(), s.grid.nxi(),
             s.grid.nth()));
}

void boundary_zeros() {
  const ScenarioSetup s = setup(Scenario{});
  const SurfaceGrid g(s.grid);
  const LimitSolution sol = run_limit(s.params, g, s.forcings, s.mollifiers, s.control);
  double ends = 0.0, interior = 0.0;
  for (const auto& st : sol.states) {
    for (int sp : {4, 5}) {
      for (int k = 0; k < g.nth(); ++k)
        ends = std::max({ends, std::abs(st.v[sp][g.index(0, k)]), std::abs(st.v[sp][g.index(g.n1() - 1, k)])});
      interior = std::max(interior, oracle::max_abs(st.v[sp]));
    }
  }
  report("AC5", ends < 1e-12 && interior > 0.0, fmt("max |v5|,|v6| at ends %.2e (interior max %.3e)", ends, interior));
}

void audit() {
  const Scenario sc;
  const ScenarioSetup s = setup(sc);
  const FullSolution up = run_upper(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  StateVec6 box;
  for (int sp = 0; sp < kSpecies; ++sp) {
    double mx = 0.0;
    for (const auto& st : up.states) mx = std::max(mx, oracle::max_abs(st.u[sp]));
    box[sp] = std::max(mx, 1e-6);
  }
  const MonotoneReport r = audit_quasi_monotone(s.params, box, 10000, sc.run.seed, sc.forcing.c2, sc.forcing.psi0);
  const auto& f2 = r.f_sign[1];
  auto up_or_zero = [](Sign x) { return x == Sign::Nondecreasing || x == Sign::Zero; };
  const bool partition = up_or_zero(f2[0]) && up_or_zero(f2[2]) && up_or_zero(f2[5]) &&
                         f2[3] == Sign::Nonincreasing && f2[4] == Sign::Nonincreasing;
  report("AC6", partition && !r.any_fail(),
         fmt("f2 row [%s %s %s %s %s], any FAIL: %s, samples %d", sign_symbol(f2[0]), sign_symbol(f2[2]),
             sign_symbol(f2[3]), sign_symbol(f2[4]), sign_symbol(f2[5]), r.any_fail() ? "yes" : "no", r.samples));
}

void michaelis_menten() {
  double resid = 0.0;
  std::vector<double> err;
  for (double e0 : {0.1, 0.05, 0.025}) {
    MMState init;
    init.s = 1.0;
    init.e = e0;
    const double km = init.michaelis_constant();
    const double t_end = 2.0 * (km + init.s) / (init.k2 * e0);
    const MMTrajectory full = mm_simulate(init, t_end, 400);
    const MMTrajectory red = mm_reduced(init.s, e0, init.k2, km, t_end, 400);
    double m = 0.0;
    for (std::size_t n = 0; n < full.t.size(); ++n) {
      resid = std::max({resid, std::abs(full.e[n] + full.c[n] - e0),
                        std::abs(full.s[n] + full.c[n] + full.p[n] - init.s)});
      m = std::max(m, std::abs(full.s[n] - red.s[n]));
    }
    err.push_back(m);
  }
  report("AC7", resid < 1e-9 && err[1] < err[0] && err[2] < err[1],
         fmt("residual %.2e, reduction error %.3e > %.3e > %.3e", resid, err[0], err[1], err[2]));
}

void scheme_orders() {
  const ModelParams p;
  const Mollifiers moll = Mollifiers::none();
  const Forcings forcings(ForcingSettings{0.0, 0.0, 0.2}, p.ell, moll.phi1);
  const oracle::Manufactured mf{p.ell, p.eps, 0.5};
  RunControl rc;
  rc.t_end = 0.2;
  rc.dt = 0.02;
  rc.samples = 1;

  FullSolverOptions fopt;
  fopt.kinetics = Kinetics::None;
  fopt.source = ManufacturedSource{
      [&](int s, double x1, double xi, double th, double t) { return mf.shell_source(p.diffusion(s), x1, xi, th, t); },
      true};
  LimitSolverOptions lopt;
  lopt.kinetics = Kinetics::None;
  lopt.source = SurfaceSource{
      [&](int s, double x1, double th, double t) { return s < 4 ? mf.surface_source(p.diffusion(s), x1, th, t) : 0.0; },
      true};

  std::vector<double> h, ef, el;
  for (int level = 0; level < 3; ++level) {
    const ShellGrid g(8 * (1 << level) + 1, 5, 8 * (1 << level), p.eps, p.ell);
    const SurfaceGrid sg(g);
    const FieldState u = run_full(p, g, forcings, moll, rc, fopt).states.back();
    const LimitState v = run_limit(p, sg, forcings, moll, rc, lopt).states.back();
    double a = 0.0, b = 0.0;
    for (int s = 0; s < 4; ++s)
      for (int k = 0; k < g.nth(); ++k)
        for (int i = 0; i < g.n1(); ++i) {
          const double exact = mf.value(g.x1(i), g.theta(k), rc.t_end);
          b = std::max(b, std::abs(v.v[s][sg.index(i, k)] - exact));
          for (int j = 0; j < g.nxi(); ++j) a = std::max(a, std::abs(u.u[s][g.index(i, j, k)] - exact));
        }
    h.push_back(g.h1());
    ef.push_back(a);
    el.push_back(b);
  }
  const double order_full = oracle::observed_order(h, ef);
  const double order_limit = oracle::observed_order(h, el);

  const oracle::Manufactured mt{p.ell, p.eps, 0.0};
  FullSolverOptions topt = fopt;
  topt.source = ManufacturedSource{
      [&](int s, double x1, double xi, double th, double t) { return mt.shell_source(p.diffusion(s), x1, xi, th, t); },
      false};
  const ShellGrid g(17, 5, 8, p.eps, p.ell);
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  std::vector<Field> finals;
  for (double dt : dts) {
    RunControl r2;
    r2.t_end = 1.0;
    r2.dt = dt;
    r2.samples = 1;
    finals.push_back(run_full(p, g, forcings, moll, r2, topt).states.back().u[0]);
  }
  std::vector<double> diff;
  for (std::size_t n = 0; n + 1 < finals.size(); ++n) {
    Field d(g.size());
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = finals[n][m] - finals[n + 1][m];
    diff.push_back(oracle::max_abs(d));
  }
  const double order_time = oracle::observed_order(std::vector<double>(dts.begin(), dts.end() - 1), diff);
  auto near = [](double x, double target) { return std::abs(x - target) <= 0.3; };
  report("AC8", near(order_full, 2.0) && near(order_limit, 2.0) && near(order_time, 1.0),
         fmt("space order full %.3f, limit %.3f; time order %.3f", order_full, order_limit, order_time));
}

void nondimensional() {
  const NondimensionalScales s = from_dimensional(DimensionalParams{});
  const double d5 = sig3(s.d_ratio(5)), d6 = sig3(s.d_ratio(6));
  report("AC9",
         std::abs(d5 - 2.16e-6) < 1e-12 && std::abs(d6 - 2.89e-8) < 1e-14 && s.gamma1 > 1e-8 && s.gamma1 < 1.5e-2,
         fmt("d5 %.3g, d6 %.3g, gamma1 %.3e", s.d_ratio(5), s.d_ratio(6), s.gamma1));
}

}  // namespace

int main() {
  guarded("AC1/AC2", eps_sweep);
  guarded("AC3", corrector);
  guarded("AC4", positivity);
  guarded("AC5", boundary_zeros);
  guarded("AC6", audit);
  guarded("AC7", michaelis_menten);
  guarded("AC8", scheme_orders);
  guarded("AC9", nondimensional);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
