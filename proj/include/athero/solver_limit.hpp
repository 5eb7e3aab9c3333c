#pragma once

// The thin-shell limit: a parabolic system for v1..v4 on the inner surface
// coupled to pointwise ODEs for v5, v6, the boundary-layer corrector W and
// the two-scale approximation R = v + eps^2 W.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "athero/geometry.hpp"
#include "athero/kinetics.hpp"
#include "athero/solver_full.hpp"
#include "athero/spectral.hpp"

namespace athero {

/// v1..v6 on the surface grid at one time level.
struct LimitState {
  std::array<Field, kSpecies> v;

  [[nodiscard]] static LimitState zeros(const SurfaceGrid& grid);
};

struct SurfaceSource {
  std::function<double(int species, double x1, double theta, double t)> fn;
  bool at_new_time = false;
};

struct LimitSolverOptions {
  Kinetics kinetics = Kinetics::Model;  // Model or None
  X1Closure closure = X1Closure::Dirichlet;
  std::optional<SurfaceSource> source;
};

struct LimitSolution {
  SurfaceGrid grid;
  std::vector<double> times;
  std::vector<LimitState> states;
  std::vector<StepDiagnostics> diagnostics;
  double min_value = 0.0;
  bool positivity_flagged = false;
  double max_residual = 0.0;
  double runtime_s = 0.0;
};

class LimitSolver {
 public:
  LimitSolver(const ModelParams& params, const SurfaceGrid& grid, const Forcings& forcings,
              const Mollifiers& mollifiers, double dt, LimitSolverOptions options = {});

  /// v1..v4: explicit F0, implicit surface diffusion, Dirichlet x1 ends.
  /// v5, v6: explicit Euler on every node, ends included.
  [[nodiscard]] LimitState step(const LimitState& state, double t);

  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double last_residual() const { return last_residual_; }

 private:
  ModelParams params_;
  SurfaceGrid grid_;
  Forcings forcings_;
  double dt_;
  LimitSolverOptions options_;
  std::vector<SurfaceImplicitOperator> operators_;  // v1..v4
  Field theta_shape_, psi_shape_, phi1_, phi2_;
  double last_residual_ = 0.0;
  long steps_ = 0;
};

/// dt bound of the limit system alone (no folded surface flux).
[[nodiscard]] double limit_default_dt(const ModelParams& params, const ForcingSettings& forcing);

[[nodiscard]] LimitSolution run_limit(const ModelParams& params, const SurfaceGrid& grid, const Forcings& forcings,
                                      const Mollifiers& mollifiers, const RunControl& control,
                                      LimitSolverOptions options = {});

/// Closed-form corrector W_i = A_i P(xi), A_i = g_i(v)/d_i for i in {1,3,4},
/// P(xi) = xi^2/2 - xi + 1/3. W2 = W5 = W6 = 0.
class Corrector {
 public:
  Corrector(const SurfaceGrid& grid, std::array<Field, kSpecies> amplitude);

  [[nodiscard]] static double profile(double xi) { return 0.5 * xi * xi - xi + 1.0 / 3.0; }
  [[nodiscard]] static double profile_dxi(double xi) { return xi - 1.0; }

  [[nodiscard]] double amplitude(int species, std::size_t surface_index) const {
    return amplitude_[species][surface_index];
  }
  [[nodiscard]] double W(int species, std::size_t surface_index, double xi) const {
    return amplitude_[species][surface_index] * profile(xi);
  }
  [[nodiscard]] double dW_dxi(int species, std::size_t surface_index, double xi) const {
    return amplitude_[species][surface_index] * profile_dxi(xi);
  }
  [[nodiscard]] const SurfaceGrid& grid() const { return grid_; }
  [[nodiscard]] bool is_zero() const;

 private:
  SurfaceGrid grid_;
  std::array<Field, kSpecies> amplitude_;
};

[[nodiscard]] Corrector eval_corrector(const LimitState& v, const SurfaceGrid& grid, const ModelParams& params,
                                       const Mollifiers& mollifiers);

/// R = v + eps^2 W on the shell grid, v extended constantly across xi.
/// Throws std::invalid_argument if the surface grid is not the footprint of `shell`.
[[nodiscard]] FieldState assemble_R(const LimitState& v, const Corrector& corrector, const ShellGrid& shell);

/// v extended constantly across xi (the eps = 0 form of R).
[[nodiscard]] FieldState extend(const LimitState& v, const SurfaceGrid& surface, const ShellGrid& shell);

}  // namespace athero
