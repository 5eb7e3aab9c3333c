// Command-line driver: simulations, eps sweeps, kinetics audit and the
// Michaelis-Menten demo. Every subcommand writes CSV output plus a
// manifest.txt into --out.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "athero/harness.hpp"
#include "athero/io.hpp"
#include "athero/kinetics.hpp"

namespace fs = std::filesystem;
using namespace athero;

namespace {

struct Common {
  std::string config;
  std::string out = "out";
  double eps = 0.0;
};

struct Loaded {
  Scenario scenario;
  std::string text;
};

Loaded load(const Common& c) {
  Loaded l;
  if (!c.config.empty()) {
    std::ifstream in(c.config);
    if (!in) throw ConfigError("cannot read config file '" + c.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    l.text = buf.str();
    l.scenario = parse_scenario(l.text);
  } else {
    l.text = to_config_text(l.scenario);
  }
  if (c.eps > 0.0) l.scenario.model.eps = c.eps;
  return l;
}

std::string numbered(const char* stem, std::size_t n, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, n, ext);
  return buf;
}

Manifest start_manifest(const std::string& command, const Loaded& l, const ShellGrid* grid) {
  Manifest m;
  m.command = command;
  m.config_text = l.text;
  m.add("eps", l.scenario.model.eps);
  if (grid != nullptr) m.add("grid", grid_summary(*grid));
  return m;
}

int cmd_validate(const std::string& path) {
  const Scenario sc = load_scenario(path);
  const ValidationReport rep = validate(sc);
  if (!rep.ok()) {
    std::cerr << "invalid:\n" << rep.summary();
    return 2;
  }
  std::cout << path << ": ok\n";
  return 0;
}

int cmd_simulate_full(const Common& c, bool vtk) {
  const Loaded l = load(c);
  const ScenarioSetup s = setup(l.scenario);
  ensure_output_dir(c.out);
  const FullSolution sol = run_full(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  for (std::size_t n = 0; n < sol.states.size(); ++n) {
    write_field_csv(fs::path(c.out) / numbered("field", n, "csv"), s.grid, sol.states[n]);
  }
  if (vtk) write_field_vtk(fs::path(c.out) / "field_final.vtk", s.grid, sol.states.back());
  write_diagnostics_csv(fs::path(c.out) / "diagnostics.csv", sol.diagnostics);
  Manifest m = start_manifest("simulate-full", l, &s.grid);
  m.add("steps", static_cast<double>(sol.diagnostics.size()));
  m.add("dt", sol.diagnostics.empty() ? 0.0 : sol.diagnostics.front().dt);
  m.add("min_value", sol.min_value);
  m.add("positivity_flagged", sol.positivity_flagged ? "yes" : "no");
  m.add("max_residual", sol.max_residual);
  m.add("runtime_s", sol.runtime_s);
  write_manifest(fs::path(c.out) / "manifest.txt", m);
  std::cout << "simulate-full: " << sol.diagnostics.size() << " steps, min " << sol.min_value << ", "
            << sol.runtime_s << " s\n";
  return 0;
}

int cmd_simulate_limit(const Common& c, bool with_R) {
  const Loaded l = load(c);
  const ScenarioSetup s = setup(l.scenario);
  ensure_output_dir(c.out);
  const SurfaceGrid surface(s.grid);
  RunControl control = s.control;
  if (control.dt <= 0.0) control.dt = default_dt(s.params, l.scenario.forcing, s.grid);
  const LimitSolution sol = run_limit(s.params, surface, s.forcings, s.mollifiers, control);
  for (std::size_t n = 0; n < sol.states.size(); ++n) {
    write_surface_csv(fs::path(c.out) / numbered("surface", n, "csv"), surface, sol.states[n]);
    if (with_R) {
      const Corrector w = eval_corrector(sol.states[n], surface, s.params, s.mollifiers);
      write_field_csv(fs::path(c.out) / numbered("R", n, "csv"), s.grid, assemble_R(sol.states[n], w, s.grid));
    }
  }
  write_diagnostics_csv(fs::path(c.out) / "diagnostics.csv", sol.diagnostics);
  Manifest m = start_manifest("simulate-limit", l, &s.grid);
  m.add("steps", static_cast<double>(sol.diagnostics.size()));
  m.add("min_value", sol.min_value);
  m.add("runtime_s", sol.runtime_s);
  write_manifest(fs::path(c.out) / "manifest.txt", m);
  std::cout << "simulate-limit: " << sol.diagnostics.size() << " steps, min " << sol.min_value << ", "
            << sol.runtime_s << " s\n";
  return 0;
}

int cmd_compare(const Common& c) {
  const Loaded l = load(c);
  ScenarioSetup s = setup(l.scenario);
  ensure_output_dir(c.out);
  if (s.control.dt <= 0.0) s.control.dt = default_dt(s.params, l.scenario.forcing, s.grid);
  const FullSolution full = run_full(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  const FullSolution upper = run_upper(s.params, s.grid, s.forcings, s.mollifiers, s.control);
  const LimitSolution limit = run_limit(s.params, SurfaceGrid(s.grid), s.forcings, s.mollifiers, s.control);
  const ErrorRecord rec = compare(full, limit, s.params, s.mollifiers);
  const SandwichReport sw = check_sandwich(full, upper);

  SweepReport single;
  single.records.push_back(rec);
  write_sweep_csv(fs::path(c.out) / "compare.csv", single);
  write_sandwich_csv(fs::path(c.out) / "sandwich.csv", sw);
  Manifest m = start_manifest("compare", l, &s.grid);
  m.add("sup_err_max", rec.sup_max());
  m.add("grad_l2_total", rec.grad_total());
  m.add("sandwich", sw.pass() ? "pass" : "fail");
  m.add("runtime_s", rec.runtime_s() + upper.runtime_s);
  write_manifest(fs::path(c.out) / "manifest.txt", m);
  std::cout << "compare: sup_err " << rec.sup_max() << ", grad_l2 " << rec.grad_total() << ", sandwich "
            << (sw.pass() ? "pass" : "fail") << '\n';
  return 0;
}

int cmd_sweep(const Common& c, const std::vector<double>& eps_list, int threads) {
  Common base = c;
  base.eps = 0.0;
  const Loaded l = load(base);
  ensure_output_dir(c.out);
  SweepOptions opt;
  opt.eps_list = eps_list;
  opt.threads = threads;
  const SweepReport rep = sweep_eps(l.scenario, opt);
  write_sweep_csv(fs::path(c.out) / "sweep.csv", rep);
  Manifest m = start_manifest("sweep-eps", l, nullptr);
  for (const auto& r : rep.records) {
    const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
    m.add("grid eps=" + std::to_string(r.eps), grid_summary(policy_grid(l.scenario.model.ell, r.eps, eps_min,
                                                                         l.scenario.grid.nxi)));
  }
  m.add("dt", sweep_dt(l.scenario, eps_list));
  m.add("fitted_order_sup", rep.sup_fit.slope);
  m.add("fitted_order_grad", rep.grad_fit.slope);
  m.add("C0", rep.C0);
  m.add("runtime_s", rep.runtime_s);
  write_manifest(fs::path(c.out) / "manifest.txt", m);
  std::cout << "sweep-eps: sup order " << rep.sup_fit.slope << " (R2 " << rep.sup_fit.r2 << "), grad order "
            << rep.grad_fit.slope << " (R2 " << rep.grad_fit.r2 << "), " << rep.runtime_s << " s\n";
  for (const auto& r : rep.records) {
    if (!r.failure.empty()) std::cerr << "eps " << r.eps << " failed: " << r.failure << '\n';
  }
  return rep.complete() && rep.fitted ? 0 : 1;
}

int cmd_audit(const Common& c, std::uint64_t seed, int samples, double box) {
  const Loaded l = load(c);
  ScenarioSetup s = setup(l.scenario);
  ensure_output_dir(c.out);
  StateVec6 upper;
  if (box > 0.0) {
    upper.fill(box);
  } else {
    const FullSolution up = run_upper(s.params, s.grid, s.forcings, s.mollifiers, s.control);
    for (int sp = 0; sp < kSpecies; ++sp) {
      double mx = 0.0;
      for (const auto& st : up.states) mx = std::max(mx, *std::max_element(st.u[sp].begin(), st.u[sp].end()));
      upper[sp] = std::max(mx, 1e-6);
    }
  }
  const MonotoneReport rep = audit_quasi_monotone(s.params, upper, samples > 0 ? samples : l.scenario.run.audit_samples,
                                                  seed, l.scenario.forcing.c2, l.scenario.forcing.psi0);
  write_audit_csv(fs::path(c.out) / "audit.csv", rep);
  Manifest m = start_manifest("audit-kinetics", l, nullptr);
  m.add("seed", std::to_string(seed));
  m.add("samples", static_cast<double>(rep.samples));
  std::ostringstream b;
  for (double x : upper) b << x << ' ';
  m.add("box_upper", b.str());
  m.add("any_fail", rep.any_fail() ? "yes" : "no");
  m.add("lipschitz_f", rep.lipschitz_f);
  m.add("lipschitz_g", rep.lipschitz_g);
  write_manifest(fs::path(c.out) / "manifest.txt", m);
  std::cout << "audit-kinetics: " << (rep.any_fail() ? "FAIL entries present" : "no FAIL entries") << ", a2 = "
            << rep.a[1] << ", b2 = " << rep.b[1] << '\n';
  return rep.any_fail() ? 1 : 0;
}

int cmd_mm(const std::string& out, MMState init, double t_end, int samples) {
  ensure_output_dir(out);
  const double km = init.michaelis_constant();
  if (t_end <= 0.0) t_end = 2.0 * (km + init.s) / (init.k2 * init.e);
  const MMTrajectory full = mm_simulate(init, t_end, samples);
  const MMTrajectory red = mm_reduced(init.s, init.e, init.k2, km, t_end, samples);
  std::ofstream os(fs::path(out) / "mm.csv");
  if (!os) throw std::runtime_error("cannot write mm.csv");
  os.precision(15);
  os << "t,s,e,c,p,s_reduced,p_reduced,enzyme_residual,substrate_residual\n";
  double worst = 0.0, diff = 0.0;
  for (std::size_t n = 0; n < full.t.size(); ++n) {
    const double re = std::abs(full.e[n] + full.c[n] - init.e);
    const double rs = std::abs(full.s[n] + full.c[n] + full.p[n] - init.s);
    worst = std::max({worst, re, rs});
    diff = std::max(diff, std::abs(full.s[n] - red.s[n]));
    os << full.t[n] << ',' << full.s[n] << ',' << full.e[n] << ',' << full.c[n] << ',' << full.p[n] << ',' << red.s[n]
       << ',' << red.p[n] << ',' << re << ',' << rs << '\n';
  }
  Manifest m;
  m.command = "mm-demo";
  m.add("s0", init.s);
  m.add("e0", init.e);
  m.add("Km", km);
  m.add("t_end", t_end);
  m.add("max_conservation_residual", worst);
  m.add("max_s_discrepancy", diff);
  write_manifest(fs::path(out) / "manifest.txt", m);
  std::cout << "mm-demo: conservation residual " << worst << ", max |s - s_reduced| " << diff << '\n';
  return worst < 1e-9 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-shell atherosclerosis reaction-diffusion model"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Scenario file (key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "Output directory");
  };

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate-config", "Check a scenario file against the parameter constraints");
  validate_cmd->add_option("config", validate_path, "Scenario file")->required();

  bool vtk = false;
  auto* full_cmd = app.add_subcommand("simulate-full", "Integrate the thin-shell problem");
  add_common(full_cmd);
  full_cmd->add_option("--eps", common.eps, "Override the shell thickness");
  full_cmd->add_flag("--vtk", vtk, "Also write the final state as legacy VTK");

  bool with_R = false;
  auto* limit_cmd = app.add_subcommand("simulate-limit", "Integrate the limit problem on the inner surface");
  add_common(limit_cmd);
  limit_cmd->add_option("--eps", common.eps, "Override the shell thickness");
  limit_cmd->add_flag("--with-R", with_R, "Also write v + eps^2 W on the shell grid");

  auto* compare_cmd = app.add_subcommand("compare", "Full vs limit error norms and the upper-solution check");
  add_common(compare_cmd);
  compare_cmd->add_option("--eps", common.eps, "Override the shell thickness");

  std::vector<double> eps_list{0.1, 0.05, 0.025};
  int threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep-eps", "Error norms and fitted orders over several eps");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--eps", eps_list, "Comma-separated eps values (at least three)")->delimiter(',');
  sweep_cmd->add_option("--threads", threads, "Concurrent eps runs")->check(CLI::PositiveNumber);

  std::uint64_t seed = 42;
  int audit_samples = 0;
  double box = 0.0;
  auto* audit_cmd = app.add_subcommand("audit-kinetics", "Sign audit of the off-diagonal reaction derivatives");
  add_common(audit_cmd);
  audit_cmd->add_option("--seed", seed, "Sampling seed");
  audit_cmd->add_option("--samples", audit_samples, "Sample count (default from the scenario)");
  audit_cmd->add_option("--box", box, "Uniform box bound instead of the upper-solution maxima");

  MMState mm;
  double mm_t_end = 0.0;
  int mm_samples = 200;
  std::string mm_out = "out";
  auto* mm_cmd = app.add_subcommand("mm-demo", "Michaelis-Menten full vs reduced kinetics");
  mm_cmd->add_option("--s0", mm.s, "Initial substrate");
  mm_cmd->add_option("--e0", mm.e, "Initial enzyme");
  mm_cmd->add_option("--k1", mm.k1, "Binding rate");
  mm_cmd->add_option("--km1", mm.km1, "Unbinding rate");
  mm_cmd->add_option("--k2", mm.k2, "Catalytic rate");
  mm_cmd->add_option("--t-end", mm_t_end, "Horizon (default 2 (Km + s0) / (k2 e0))");
  mm_cmd->add_option("--samples", mm_samples, "Output samples");
  mm_cmd->add_option("--out", mm_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*full_cmd) return cmd_simulate_full(common, vtk);
    if (*limit_cmd) return cmd_simulate_limit(common, with_R);
    if (*compare_cmd) return cmd_compare(common);
    if (*sweep_cmd) return cmd_sweep(common, eps_list, threads);
    if (*audit_cmd) return cmd_audit(common, seed, audit_samples, box);
    if (*mm_cmd) return cmd_mm(mm_out, mm, mm_t_end, mm_samples);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
