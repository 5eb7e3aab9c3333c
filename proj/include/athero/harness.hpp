#pragma once

// Error norms between the thin-shell and limit solutions, convergence-order
// fits across eps, and the positivity / upper-solution checks.

#include <array>
#include <string>
#include <vector>

#include "athero/solver_full.hpp"
#include "athero/solver_limit.hpp"

namespace athero {

struct ErrorRecord {
  double eps = 0.0;
  std::array<double, kSpecies> sup_err{};  // max |u_i - v_i| over nodes and samples
  std::array<double, 4> grad_l2{};         // ||grad(u_i - R_i)||_{L2(shell x (0,T))}, i = 1..4
  double runtime_full_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string failure;  // empty on success

  [[nodiscard]] double sup_max() const;
  /// sqrt(sum_i grad_l2_i^2).
  [[nodiscard]] double grad_total() const;
  [[nodiscard]] double runtime_s() const { return runtime_full_s + runtime_limit_s; }
};

/// Throws std::invalid_argument if the grids or sample times differ.
[[nodiscard]] ErrorRecord compare(const FullSolution& full, const LimitSolution& limit, const ModelParams& params,
                                  const Mollifiers& mollifiers);

/// Space-time L2 norm of the gradient of e on the physical shell, using
/// second-order differences, the volume element r eps dxi dtheta dx1 and
/// trapezoidal weights in x1, xi and t.
[[nodiscard]] double gradient_l2(const ShellGrid& grid, const std::vector<double>& times,
                                 const std::vector<Field>& error);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of log(y) on log(x). Needs >= 3 points, all positive.
[[nodiscard]] LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct SweepReport {
  std::vector<ErrorRecord> records;  // ordered by decreasing eps
  LogLogFit sup_fit;
  LogLogFit grad_fit;
  std::array<LogLogFit, kSpecies> sup_fit_species{};
  std::array<LogLogFit, 4> grad_fit_species{};
  double C0 = 0.0;  // max sup_err / eps
  double runtime_s = 0.0;
  bool fitted = false;

  [[nodiscard]] bool complete() const;
};

struct SweepOptions {
  std::vector<double> eps_list{0.1, 0.05, 0.025};
  int threads = 1;
};

/// Runs the full and limit problems for each eps on the refinement-policy
/// grid (or the scenario's fixed grid when set) and fits the orders.
/// Member failures are tagged in their record; fits use the successful runs.
[[nodiscard]] SweepReport sweep_eps(const Scenario& scenario, const SweepOptions& options);

/// The common dt used by every member of a sweep.
[[nodiscard]] double sweep_dt(const Scenario& scenario, const std::vector<double>& eps_list);

struct SandwichReport {
  std::array<double, kSpecies> max_neg{};   // max(0, -u)
  std::array<double, kSpecies> max_over{};  // max(0, u - u_upper)
  double tolerance = 1e-8;

  [[nodiscard]] bool pass() const;
};

[[nodiscard]] SandwichReport check_sandwich(const FullSolution& full, const FullSolution& upper);

/// Bundles the model, grid and forcing objects of a scenario.
struct ScenarioSetup {
  ModelParams params;
  ShellGrid grid;
  Mollifiers mollifiers;
  Forcings forcings;
  RunControl control;
};

/// Validates the scenario (throws ConfigError listing violations) and
/// builds its grid and forcings.
[[nodiscard]] ScenarioSetup setup(const Scenario& scenario);

}  // namespace athero
