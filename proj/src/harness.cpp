#include "athero/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace athero {

double ErrorRecord::sup_max() const { return *std::max_element(sup_err.begin(), sup_err.end()); }

double ErrorRecord::grad_total() const {
  double s = 0.0;
  for (double g : grad_l2) s += g * g;
  return std::sqrt(s);
}

namespace {

// Second-order derivative along a strided line of n points with spacing h.
inline double diff2(const double* p, std::ptrdiff_t stride, int idx, int n, double h) {
  if (idx == 0) return (-3.0 * p[0] + 4.0 * p[stride] - p[2 * stride]) / (2.0 * h);
  if (idx == n - 1) return (3.0 * p[0] - 4.0 * p[-stride] + p[-2 * stride]) / (2.0 * h);
  return (p[stride] - p[-stride]) / (2.0 * h);
}

inline double trapezoid_weight(int idx, int n) { return (idx == 0 || idx == n - 1) ? 0.5 : 1.0; }

double gradient_energy(const ShellGrid& g, const Field& e) {
  const int n1 = g.n1(), nxi = g.nxi(), nth = g.nth();
  const double h1 = g.h1(), hxi = g.hxi(), hth = g.hth(), eps = g.eps();
  const std::ptrdiff_t sx = nxi;
  double sum = 0.0;
  for (int k = 0; k < nth; ++k) {
    const int kp = (k + 1) % nth;
    const int km = (k + nth - 1) % nth;
    for (int i = 0; i < n1; ++i) {
      const double wi = trapezoid_weight(i, n1);
      for (int j = 0; j < nxi; ++j) {
        const std::size_t n = g.index(i, j, k);
        const double r = g.radius(j);
        const double dx1 = diff2(&e[n], sx, i, n1, h1);
        const double dr = diff2(&e[n], 1, j, nxi, hxi) / eps;
        const double dth = (e[g.index(i, j, kp)] - e[g.index(i, j, km)]) / (2.0 * hth) / r;
        sum += wi * trapezoid_weight(j, nxi) * r * (dx1 * dx1 + dr * dr + dth * dth);
      }
    }
  }
  return sum * h1 * hxi * hth * eps;
}

bool same_times(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (std::abs(a[n] - b[n]) > 1e-12 * (1.0 + std::abs(a[n]))) return false;
  }
  return true;
}

}  // namespace

double gradient_l2(const ShellGrid& grid, const std::vector<double>& times, const std::vector<Field>& error) {
  if (times.size() != error.size()) throw std::invalid_argument("gradient_l2: one field per sample time required");
  if (times.size() < 2) throw std::invalid_argument("gradient_l2: need at least two samples");
  double total = 0.0;
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (error[n].size() != grid.size()) throw std::invalid_argument("gradient_l2: field size does not match grid");
    const double left = n > 0 ? times[n] - times[n - 1] : 0.0;
    const double right = n + 1 < times.size() ? times[n + 1] - times[n] : 0.0;
    total += 0.5 * (left + right) * gradient_energy(grid, error[n]);
  }
  return std::sqrt(total);
}

ErrorRecord compare(const FullSolution& full, const LimitSolution& limit, const ModelParams& params,
                    const Mollifiers& mollifiers) {
  const ShellGrid& g = full.grid;
  if (!limit.grid.matches(g)) throw std::invalid_argument("compare: limit grid is not the footprint of the shell grid");
  if (!same_times(full.times, limit.times)) throw std::invalid_argument("compare: sample times differ");

  ErrorRecord rec;
  rec.eps = g.eps();
  rec.runtime_full_s = full.runtime_s;
  rec.runtime_limit_s = limit.runtime_s;

  std::array<std::vector<Field>, 4> grad_err;
  for (std::size_t n = 0; n < full.times.size(); ++n) {
    const LimitState& v = limit.states[n];
    const FieldState& u = full.states[n];
    for (int k = 0; k < g.nth(); ++k) {
      for (int i = 0; i < g.n1(); ++i) {
        const std::size_t q = limit.grid.index(i, k);
        for (int j = 0; j < g.nxi(); ++j) {
          const std::size_t m = g.index(i, j, k);
          for (int s = 0; s < kSpecies; ++s) rec.sup_err[s] = std::max(rec.sup_err[s], std::abs(u.u[s][m] - v.v[s][q]));
        }
      }
    }
    const FieldState R = assemble_R(v, eval_corrector(v, limit.grid, params, mollifiers), g);
    for (int s = 0; s < 4; ++s) {
      Field e(g.size());
      for (std::size_t m = 0; m < e.size(); ++m) e[m] = u.u[s][m] - R.u[s][m];
      grad_err[s].push_back(std::move(e));
    }
  }
  for (int s = 0; s < 4; ++s) rec.grad_l2[s] = gradient_l2(g, full.times, grad_err[s]);
  return rec;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit: x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("fit: at least three points required");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0) || !std::isfinite(x[k]) || !std::isfinite(y[k]))
      throw std::invalid_argument("fit: values must be positive and finite");
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: x values must be distinct");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

bool SweepReport::complete() const {
  return std::all_of(records.begin(), records.end(), [](const ErrorRecord& r) { return r.failure.empty(); });
}

ScenarioSetup setup(const Scenario& scenario) {
  const ValidationReport report = validate(scenario);
  if (!report.ok()) throw ConfigError("invalid scenario:\n" + report.summary());
  const ModelParams& p = scenario.model;
  Mollifiers moll = Mollifiers::from(scenario.patches, p.ell);
  Forcings forcings(scenario.forcing, p.ell, moll.phi1);
  RunControl control;
  control.t_end = p.T;
  control.dt = scenario.run.dt;
  control.samples = scenario.run.samples;
  control.tol_pos = scenario.run.tol_pos;
  return {p, scenario_grid(scenario), moll, forcings, control};
}

double sweep_dt(const Scenario& scenario, const std::vector<double>& eps_list) {
  if (scenario.run.dt > 0.0) return scenario.run.dt;
  const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  double dt = std::numeric_limits<double>::infinity();
  for (double eps : eps_list) {
    ModelParams p = scenario.model;
    p.eps = eps;
    const ShellGrid g = policy_grid(p.ell, eps, eps_min, scenario.grid.nxi);
    dt = std::min({dt, default_dt(p, scenario.forcing, g), limit_default_dt(p, scenario.forcing)});
  }
  return dt;
}

SweepReport sweep_eps(const Scenario& scenario, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> eps_list = options.eps_list;
  if (eps_list.size() < 3) throw std::invalid_argument("sweep: at least three eps values required");
  std::sort(eps_list.begin(), eps_list.end(), std::greater<>());
  if (std::adjacent_find(eps_list.begin(), eps_list.end()) != eps_list.end())
    throw std::invalid_argument("sweep: eps values must be distinct");
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("sweep: eps values must lie in (0,1)");
  }
  Scenario base = scenario;
  base.model.eps = eps_list.front();
  const ValidationReport report = validate(base);
  if (!report.ok()) throw ConfigError("invalid scenario:\n" + report.summary());

  const double eps_min = eps_list.back();
  const double dt = sweep_dt(scenario, eps_list);

  SweepReport out;
  out.records.resize(eps_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t m = next++; m < eps_list.size(); m = next++) {
      ErrorRecord& rec = out.records[m];
      rec.eps = eps_list[m];
      try {
        Scenario sc = scenario;
        sc.model.eps = eps_list[m];
        ScenarioSetup s = setup(sc);
        const ShellGrid policy = policy_grid(sc.model.ell, sc.model.eps, eps_min, sc.grid.nxi);
        const ShellGrid grid(sc.grid.n1 > 0 ? sc.grid.n1 : policy.n1(), sc.grid.nxi,
                             sc.grid.nth > 0 ? sc.grid.nth : policy.nth(), sc.model.eps, sc.model.ell);
        s.control.dt = dt;
        const FullSolution full = run_full(s.params, grid, s.forcings, s.mollifiers, s.control);
        const LimitSolution limit = run_limit(s.params, SurfaceGrid(grid), s.forcings, s.mollifiers, s.control);
        rec = compare(full, limit, s.params, s.mollifiers);
        if (full.positivity_flagged) rec.failure = "positivity";
      } catch (const std::exception& e) {
        rec.failure = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(options.threads, static_cast<int>(eps_list.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> x, ysup, ygrad;
  std::array<std::vector<double>, kSpecies> ys;
  std::array<std::vector<double>, 4> yg;
  for (const auto& r : out.records) {
    if (!r.failure.empty() && r.failure != "positivity") continue;
    x.push_back(r.eps);
    ysup.push_back(r.sup_max());
    ygrad.push_back(r.grad_total());
    for (int s = 0; s < kSpecies; ++s) ys[s].push_back(r.sup_err[s]);
    for (int s = 0; s < 4; ++s) yg[s].push_back(r.grad_l2[s]);
    out.C0 = std::max(out.C0, r.sup_max() / r.eps);
  }
  if (x.size() >= 3) {
    try {
      out.sup_fit = fit_loglog(x, ysup);
      out.grad_fit = fit_loglog(x, ygrad);
      out.fitted = true;
    } catch (const std::invalid_argument&) {
      out.fitted = false;
    }
    for (int s = 0; s < kSpecies; ++s) {
      try {
        out.sup_fit_species[s] = fit_loglog(x, ys[s]);
      } catch (const std::invalid_argument&) {
        out.sup_fit_species[s] = {std::nan(""), std::nan(""), std::nan("")};
      }
    }
    for (int s = 0; s < 4; ++s) {
      try {
        out.grad_fit_species[s] = fit_loglog(x, yg[s]);
      } catch (const std::invalid_argument&) {
        out.grad_fit_species[s] = {std::nan(""), std::nan(""), std::nan("")};
      }
    }
  }
  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool SandwichReport::pass() const {
  for (int s = 0; s < kSpecies; ++s) {
    if (!(max_neg[s] < tolerance) || !(max_over[s] < tolerance)) return false;
  }
  return true;
}

SandwichReport check_sandwich(const FullSolution& full, const FullSolution& upper) {
  const ShellGrid& a = full.grid;
  const ShellGrid& b = upper.grid;
  if (a.n1() != b.n1() || a.nxi() != b.nxi() || a.nth() != b.nth() || a.eps() != b.eps() || a.ell() != b.ell())
    throw std::invalid_argument("sandwich: grids differ");
  if (!same_times(full.times, upper.times)) throw std::invalid_argument("sandwich: sample times differ");
  SandwichReport rep;
  for (std::size_t n = 0; n < full.states.size(); ++n) {
    for (int s = 0; s < kSpecies; ++s) {
      const Field& u = full.states[n].u[s];
      const Field& w = upper.states[n].u[s];
      for (std::size_t m = 0; m < u.size(); ++m) {
        rep.max_neg[s] = std::max(rep.max_neg[s], -u[m]);
        rep.max_over[s] = std::max(rep.max_over[s], u[m] - w[m]);
      }
    }
  }
  return rep;
}

}  // namespace athero
