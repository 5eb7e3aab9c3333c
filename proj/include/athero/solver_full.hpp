#pragma once

// IMEX time integration of the six-species system on the thin shell:
// reaction and inner-surface flux explicit, diffusion implicit.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "athero/geometry.hpp"
#include "athero/kinetics.hpp"
#include "athero/spectral.hpp"

namespace athero {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The six concentration fields on the shell grid at one time level.
struct FieldState {
  std::array<Field, kSpecies> u;

  [[nodiscard]] static FieldState zeros(const ShellGrid& grid);
};

/// Which right-hand side drives the reaction and boundary terms.
enum class Kinetics {
  Model,  // F and eps^rho G
  Upper,  // the linear upper system (F~, G~)
  None,   // pure diffusion (scheme verification)
};

/// Extra volumetric source, used for manufactured-solution studies.
struct ManufacturedSource {
  std::function<double(int species, double x1, double xi, double theta, double t)> fn;
  bool at_new_time = false;  // evaluate at t + dt instead of t
};

struct FullSolverOptions {
  Kinetics kinetics = Kinetics::Model;
  X1Closure closure = X1Closure::Dirichlet;
  std::optional<ManufacturedSource> source;
};

struct StepDiagnostics {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  std::array<double, kSpecies> min{};
  std::array<double, kSpecies> max{};
  double residual = 0.0;  // largest relative residual of the species solves
};

struct FullSolution {
  ShellGrid grid;
  std::vector<double> times;
  std::vector<FieldState> states;
  std::vector<StepDiagnostics> diagnostics;
  double min_value = 0.0;
  bool positivity_flagged = false;
  double max_residual = 0.0;
  double runtime_s = 0.0;
};

/// One solver per (params, grid, dt); the implicit operators are factored
/// at construction.
class FullSolver {
 public:
  FullSolver(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings, const Mollifiers& mollifiers,
             double dt, FullSolverOptions options = {});

  /// Advances `state` from t to t + dt. Negative values produced by the
  /// linear solves are passed to the kinetics as 0; callers see them through
  /// the diagnostics. Throws SolverError on non-finite values.
  [[nodiscard]] FieldState step(const FieldState& state, double t);

  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double last_residual() const { return last_residual_; }
  [[nodiscard]] const ShellGrid& grid() const { return grid_; }

 private:
  ModelParams params_;
  ShellGrid grid_;
  Forcings forcings_;
  Mollifiers mollifiers_;
  double dt_;
  FullSolverOptions options_;
  std::vector<ShellImplicitOperator> operators_;
  Field theta_shape_, psi_shape_, phi1_, phi2_;  // per surface node
  double flux_weight_;                           // converts -d d_r u at xi = 0 into a row source
  double last_residual_ = 0.0;
  long steps_ = 0;
};

struct RunControl {
  double t_end = 1.0;
  double dt = 0.0;  // 0 selects default_dt
  int samples = 20;
  double tol_pos = 1e-10;
};

/// dt = min(T/200, 0.25 / r) where r bounds the explicit loss rates of the
/// reaction terms and of the folded inner-surface flux.
[[nodiscard]] double default_dt(const ModelParams& params, const ForcingSettings& forcing, const ShellGrid& grid);

/// Integrates from `initial` (zero when omitted) to control.t_end, keeping
/// control.samples + 1 uniformly spaced states including t = 0.
[[nodiscard]] FullSolution run_full(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings,
                                    const Mollifiers& mollifiers, const RunControl& control,
                                    FullSolverOptions options = {}, const FieldState* initial = nullptr);

/// The linear upper system, whose solution bounds the model from above.
[[nodiscard]] FullSolution run_upper(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings,
                                     const Mollifiers& mollifiers, const RunControl& control);

/// Step count for a run: a multiple of `samples` with t_end/steps <= dt.
[[nodiscard]] long step_count(double t_end, double dt, int samples);

}  // namespace athero
