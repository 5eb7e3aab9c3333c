#include "athero/solver_full.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace athero {

FieldState FieldState::zeros(const ShellGrid& grid) {
  FieldState s;
  for (auto& f : s.u) f = grid.zeros();
  return s;
}

FullSolver::FullSolver(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings,
                       const Mollifiers& mollifiers, double dt, FullSolverOptions options)
    : params_(params),
      grid_(grid),
      forcings_(forcings),
      mollifiers_(mollifiers),
      dt_(dt),
      options_(std::move(options)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("full solver: dt must be positive");
  if (grid.eps() != params.eps) throw std::invalid_argument("full solver: grid eps differs from params eps");
  operators_.reserve(kSpecies);
  for (int s = 0; s < kSpecies; ++s) operators_.emplace_back(grid, params.diffusion(s), dt, options_.closure);

  const std::size_t ns = static_cast<std::size_t>(grid.n1()) * grid.nth();
  theta_shape_.resize(ns);
  psi_shape_.resize(ns);
  phi1_.resize(ns);
  phi2_.resize(ns);
  for (int k = 0; k < grid.nth(); ++k) {
    for (int i = 0; i < grid.n1(); ++i) {
      const std::size_t q = static_cast<std::size_t>(k) * grid.n1() + i;
      const double x1 = grid.x1(i);
      const double th = grid.theta(k);
      theta_shape_[q] = forcings.theta_shape(x1);
      psi_shape_[q] = forcings.psi_shape(x1, th);
      phi1_[q] = mollifiers.phi1(x1, th);
      phi2_[q] = mollifiers.phi2(x1, th);
    }
  }
  // d * L * (du/dxi) with du/dxi = -eps q / d at xi = 0 gives -eps * inner_weight * q.
  const ShellLaplacian lap(grid, options_.closure);
  flux_weight_ = -grid.eps() * lap.inner_flux_weight();
}

FieldState FullSolver::step(const FieldState& state, double t) {
  const auto& g = grid_;
  const int n1 = g.n1();
  const int nxi = g.nxi();
  const double ramp = forcings_.ramp(t);
  const bool dirichlet = options_.closure == X1Closure::Dirichlet;
  const double t_src = options_.source && options_.source->at_new_time ? t + dt_ : t;

  FieldState next;
  for (int s = 0; s < kSpecies; ++s) next.u[s] = state.u[s];

  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < n1; ++i) {
      const std::size_t q = static_cast<std::size_t>(k) * n1 + i;
      if (dirichlet && (i == 0 || i == n1 - 1)) {
        for (int s = 0; s < kSpecies; ++s) {
          for (int j = 0; j < nxi; ++j) next.u[s][g.index(i, j, k)] = 0.0;
        }
        continue;
      }
      const double theta = theta_shape_[q] * ramp;
      const double psi = psi_shape_[q] * ramp;
      for (int j = 0; j < nxi; ++j) {
        const std::size_t n = g.index(i, j, k);
        StateVec6 u;
        for (int s = 0; s < kSpecies; ++s) u[s] = std::max(state.u[s][n], 0.0);

        StateVec6 rate{};
        if (options_.kinetics == Kinetics::Model) {
          rate = eval_F(u, theta, psi, params_);
        } else if (options_.kinetics == Kinetics::Upper) {
          rate = eval_upper_F(u, theta, psi, params_);
        }
        if (j == 0 && options_.kinetics != Kinetics::None) {
          const StateVec6 flux = options_.kinetics == Kinetics::Model
                                     ? eval_G_scaled(u, phi1_[q], phi2_[q], params_)
                                     : eval_upper_G(phi1_[q], phi2_[q], params_);
          for (int s = 0; s < kSpecies; ++s) rate[s] += flux_weight_ * flux[s];
        }
        if (options_.source) {
          for (int s = 0; s < kSpecies; ++s) rate[s] += options_.source->fn(s, g.x1(i), g.xi(j), g.theta(k), t_src);
        }
        for (int s = 0; s < kSpecies; ++s) next.u[s][n] += dt_ * rate[s];
      }
    }
  }

  last_residual_ = 0.0;
  Field rhs;
  for (int s = 0; s < kSpecies; ++s) {
    rhs = next.u[s];
    operators_[s].solve(next.u[s]);
    last_residual_ = std::max(last_residual_, operators_[s].relative_residual(next.u[s], rhs));
    for (double v : next.u[s]) {
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "full solver: non-finite value in species u" << s + 1 << " at step " << steps_ + 1 << ", t = " << t + dt_;
        throw SolverError(os.str());
      }
    }
  }
  ++steps_;
  return next;
}

// ---------------------------------------------------------------------------

double default_dt(const ModelParams& p, const ForcingSettings& forcing, const ShellGrid& grid) {
  double rate = forcing.c2;
  rate = std::max(rate, p.mu(4) + p.mu(5) / p.lambda(3) + p.delta(3));
  rate = std::max(rate, p.delta(4));
  rate = std::max(rate, p.mu(10) / p.lambda(7) + p.delta(5));
  rate = std::max(rate, p.delta(6));
  // g4 loss folded into the xi = 0 row: (2/(eps h) - 1) eps^rho5 eta5 sup_x hill(x)/x.
  double hill_slope = 0.0;
  for (int n = -60; n <= 60; ++n) {
    const double x = std::pow(10.0, n / 20.0);
    const double xp = std::pow(x, p.p2);
    hill_slope = std::max(hill_slope, xp / (1.0 + xp) / x);
  }
  const double fold = 2.0 / (grid.eps() * grid.hxi()) - 1.0;
  rate = std::max(rate, fold * std::pow(p.eps, p.rho(5)) * p.eta(5) * hill_slope);
  return std::min(p.T / 200.0, 0.25 / rate);
}

long step_count(double t_end, double dt, int samples) {
  if (!(t_end > 0.0) || !(dt > 0.0) || samples < 1) throw std::invalid_argument("invalid run control");
  const long per_sample = static_cast<long>(std::ceil(t_end / samples / dt - 1e-9));
  return std::max(1L, per_sample) * samples;
}

FullSolution run_full(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings,
                      const Mollifiers& mollifiers, const RunControl& control, FullSolverOptions options,
                      const FieldState* initial) {
  const auto start = std::chrono::steady_clock::now();
  const double dt_max = control.dt > 0.0 ? control.dt : default_dt(params, forcings.settings(), grid);
  const long steps = step_count(control.t_end, dt_max, control.samples);
  const double dt = control.t_end / static_cast<double>(steps);
  const long stride = steps / control.samples;

  FullSolver solver(params, grid, forcings, mollifiers, dt, std::move(options));
  FullSolution sol{grid, {}, {}, {}, 0.0, false, 0.0, 0.0};
  FieldState state = initial != nullptr ? *initial : FieldState::zeros(grid);
  sol.times.push_back(0.0);
  sol.states.push_back(state);
  sol.diagnostics.reserve(static_cast<std::size_t>(steps));

  double min_value = std::numeric_limits<double>::infinity();
  for (long n = 0; n < steps; ++n) {
    const double t = control.t_end * static_cast<double>(n) / static_cast<double>(steps);
    state = solver.step(state, t);

    StepDiagnostics d;
    d.step = n + 1;
    d.time = control.t_end * static_cast<double>(n + 1) / static_cast<double>(steps);
    d.dt = dt;
    d.residual = solver.last_residual();
    for (int s = 0; s < kSpecies; ++s) {
      const auto [lo, hi] = std::minmax_element(state.u[s].begin(), state.u[s].end());
      d.min[s] = *lo;
      d.max[s] = *hi;
      min_value = std::min(min_value, *lo);
    }
    sol.max_residual = std::max(sol.max_residual, d.residual);
    sol.diagnostics.push_back(d);

    if ((n + 1) % stride == 0) {
      sol.times.push_back(d.time);
      sol.states.push_back(state);
    }
  }
  sol.min_value = std::min(min_value, 0.0);
  sol.positivity_flagged = sol.min_value < -control.tol_pos;
  sol.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

FullSolution run_upper(const ModelParams& params, const ShellGrid& grid, const Forcings& forcings,
                       const Mollifiers& mollifiers, const RunControl& control) {
  FullSolverOptions opts;
  opts.kinetics = Kinetics::Upper;
  return run_full(params, grid, forcings, mollifiers, control, opts);
}

}  // namespace athero
