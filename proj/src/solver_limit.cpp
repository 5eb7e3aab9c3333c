#include "athero/solver_limit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace athero {

LimitState LimitState::zeros(const SurfaceGrid& grid) {
  LimitState s;
  for (auto& f : s.v) f = grid.zeros();
  return s;
}

LimitSolver::LimitSolver(const ModelParams& params, const SurfaceGrid& grid, const Forcings& forcings,
                         const Mollifiers& mollifiers, double dt, LimitSolverOptions options)
    : params_(params), grid_(grid), forcings_(forcings), dt_(dt), options_(std::move(options)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("limit solver: dt must be positive");
  if (options_.kinetics == Kinetics::Upper) throw std::invalid_argument("limit solver: upper kinetics not supported");
  for (int s = 0; s < 4; ++s) operators_.emplace_back(grid, params.diffusion(s), dt, options_.closure);

  const std::size_t ns = grid.size();
  theta_shape_.resize(ns);
  psi_shape_.resize(ns);
  phi1_.resize(ns);
  phi2_.resize(ns);
  for (int k = 0; k < grid.nth(); ++k) {
    for (int i = 0; i < grid.n1(); ++i) {
      const std::size_t q = grid.index(i, k);
      theta_shape_[q] = forcings.theta_shape(grid.x1(i));
      psi_shape_[q] = forcings.psi_shape(grid.x1(i), grid.theta(k));
      phi1_[q] = mollifiers.phi1(grid.x1(i), grid.theta(k));
      phi2_[q] = mollifiers.phi2(grid.x1(i), grid.theta(k));
    }
  }
}

LimitState LimitSolver::step(const LimitState& state, double t) {
  const auto& g = grid_;
  const int n1 = g.n1();
  const double ramp = forcings_.ramp(t);
  const bool dirichlet = options_.closure == X1Closure::Dirichlet;
  const double t_src = options_.source && options_.source->at_new_time ? t + dt_ : t;

  LimitState next = state;
  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < n1; ++i) {
      const std::size_t q = g.index(i, k);
      StateVec6 v;
      for (int s = 0; s < kSpecies; ++s) v[s] = std::max(state.v[s][q], 0.0);
      StateVec6 rate{};
      if (options_.kinetics == Kinetics::Model) {
        rate = eval_F0(v, theta_shape_[q] * ramp, psi_shape_[q] * ramp, phi1_[q], phi2_[q], params_);
      }
      if (options_.source) {
        for (int s = 0; s < kSpecies; ++s) rate[s] += options_.source->fn(s, g.x1(i), g.theta(k), t_src);
      }
      const bool end = dirichlet && (i == 0 || i == n1 - 1);
      for (int s = 0; s < kSpecies; ++s) {
        if (end && s < 4) {
          next.v[s][q] = 0.0;
        } else {
          next.v[s][q] += dt_ * rate[s];
        }
      }
    }
  }

  last_residual_ = 0.0;
  Field rhs;
  for (int s = 0; s < 4; ++s) {
    rhs = next.v[s];
    operators_[s].solve(next.v[s]);
    last_residual_ = std::max(last_residual_, operators_[s].relative_residual(next.v[s], rhs));
  }
  for (int s = 0; s < kSpecies; ++s) {
    for (double x : next.v[s]) {
      if (!std::isfinite(x)) {
        std::ostringstream os;
        os << "limit solver: non-finite value in species v" << s + 1 << " at step " << steps_ + 1 << ", t = " << t + dt_;
        throw SolverError(os.str());
      }
    }
  }
  ++steps_;
  return next;
}

double limit_default_dt(const ModelParams& p, const ForcingSettings& forcing) {
  double rate = forcing.c2;
  rate = std::max(rate, p.mu(4) + p.mu(5) / p.lambda(3) + p.delta(3));
  rate = std::max(rate, p.mu(10) / p.lambda(7) + p.delta(5));
  rate = std::max({rate, p.delta(4) + p.eta(5), p.delta(6)});
  return std::min(p.T / 200.0, 0.25 / rate);
}

LimitSolution run_limit(const ModelParams& params, const SurfaceGrid& grid, const Forcings& forcings,
                        const Mollifiers& mollifiers, const RunControl& control, LimitSolverOptions options) {
  const auto start = std::chrono::steady_clock::now();
  const double dt_max = control.dt > 0.0 ? control.dt : limit_default_dt(params, forcings.settings());
  const long steps = step_count(control.t_end, dt_max, control.samples);
  const double dt = control.t_end / static_cast<double>(steps);
  const long stride = steps / control.samples;

  LimitSolver solver(params, grid, forcings, mollifiers, dt, std::move(options));
  LimitSolution sol{grid, {}, {}, {}, 0.0, false, 0.0, 0.0};
  LimitState state = LimitState::zeros(grid);
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
      const auto [lo, hi] = std::minmax_element(state.v[s].begin(), state.v[s].end());
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

// ---------------------------------------------------------------------------

Corrector::Corrector(const SurfaceGrid& grid, std::array<Field, kSpecies> amplitude)
    : grid_(grid), amplitude_(std::move(amplitude)) {
  for (const auto& a : amplitude_) {
    if (a.size() != grid.size()) throw std::invalid_argument("corrector: amplitude size does not match grid");
  }
}

bool Corrector::is_zero() const {
  for (const auto& a : amplitude_) {
    for (double x : a) {
      if (x != 0.0) return false;
    }
  }
  return true;
}

Corrector eval_corrector(const LimitState& v, const SurfaceGrid& grid, const ModelParams& params,
                         const Mollifiers& mollifiers) {
  std::array<Field, kSpecies> amp;
  for (auto& a : amp) a = grid.zeros();
  for (int k = 0; k < grid.nth(); ++k) {
    for (int i = 0; i < grid.n1(); ++i) {
      const std::size_t q = grid.index(i, k);
      const double phi1 = mollifiers.phi1(grid.x1(i), grid.theta(k));
      const double phi2 = mollifiers.phi2(grid.x1(i), grid.theta(k));
      if (phi1 == 0.0 && phi2 == 0.0) continue;
      StateVec6 vq;
      for (int s = 0; s < kSpecies; ++s) vq[s] = std::max(v.v[s][q], 0.0);
      const StateVec6 g = eval_G_limit(vq, phi1, phi2, params);
      for (int s : {0, 2, 3}) amp[s][q] = g[s] / params.diffusion(s);
    }
  }
  return Corrector(grid, std::move(amp));
}

FieldState extend(const LimitState& v, const SurfaceGrid& surface, const ShellGrid& shell) {
  if (!surface.matches(shell)) throw std::invalid_argument("surface grid is not the footprint of the shell grid");
  FieldState out = FieldState::zeros(shell);
  for (int k = 0; k < shell.nth(); ++k) {
    for (int i = 0; i < shell.n1(); ++i) {
      const std::size_t q = surface.index(i, k);
      for (int j = 0; j < shell.nxi(); ++j) {
        const std::size_t n = shell.index(i, j, k);
        for (int s = 0; s < kSpecies; ++s) out.u[s][n] = v.v[s][q];
      }
    }
  }
  return out;
}

FieldState assemble_R(const LimitState& v, const Corrector& corrector, const ShellGrid& shell) {
  const SurfaceGrid& surface = corrector.grid();
  FieldState out = extend(v, surface, shell);
  const double e2 = shell.eps() * shell.eps();
  for (int k = 0; k < shell.nth(); ++k) {
    for (int i = 0; i < shell.n1(); ++i) {
      const std::size_t q = surface.index(i, k);
      for (int s : {0, 2, 3}) {
        if (corrector.amplitude(s, q) == 0.0) continue;
        for (int j = 0; j < shell.nxi(); ++j) out.u[s][shell.index(i, j, k)] += e2 * corrector.W(s, q, shell.xi(j));
      }
    }
  }
  return out;
}

}  // namespace athero
