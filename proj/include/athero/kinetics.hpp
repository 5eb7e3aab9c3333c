#pragma once

// Reaction and boundary-flux kinetics of the six-species model, the
// linear upper-solution system, the quasi-monotonicity audit and the
// Michaelis-Menten reduction demo.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "athero/params.hpp"

namespace athero {

/// Concentrations (u1..u6) = (LDL, ox-LDL, monocytes, M2, M1, foam cells),
/// stored zero-based.
using StateVec6 = std::array<double, kSpecies>;

/// Interior reaction vector F(u) for oxidation intensity theta and source psi.
/// Throws std::domain_error on negative or non-finite input.
[[nodiscard]] StateVec6 eval_F(const StateVec6& u, double theta, double psi, const ModelParams& p);

/// Boundary vector G(u) with the eta_k intensities (no eps scaling).
[[nodiscard]] StateVec6 eval_G(const StateVec6& u, double phi1, double phi2, const ModelParams& p);

/// eps^rho G(u) with a separate eps^rho_k on each term: the inner-surface
/// flux -D d_r u of the thin-shell problem.
[[nodiscard]] StateVec6 eval_G_scaled(const StateVec6& u, double phi1, double phi2, const ModelParams& p);

/// Boundary terms that survive in the limit: each eta_k term kept iff rho_k == 1.
[[nodiscard]] StateVec6 eval_G_limit(const StateVec6& v, double phi1, double phi2, const ModelParams& p);

/// Limit reaction F0(v) = F(v) + G_limit(v) (components 1..4), with f5, f6 unchanged.
[[nodiscard]] StateVec6 eval_F0(const StateVec6& v, double theta, double psi, double phi1, double phi2,
                                const ModelParams& p);

/// Right-hand sides of the linear upper system.
[[nodiscard]] StateVec6 eval_upper_F(const StateVec6& u, double theta, double psi, const ModelParams& p);
/// Uses lambda_9 in place of the undefined lambda_10 of the g3 bound.
[[nodiscard]] StateVec6 eval_upper_G(double phi1, double phi2, const ModelParams& p);

// ---------------------------------------------------------------------------
// Quasi-monotonicity audit

enum class Sign { Zero, Nondecreasing, Nonincreasing, Fail };

[[nodiscard]] const char* sign_symbol(Sign s);

struct MonotoneReport {
  std::array<std::array<Sign, kSpecies>, kSpecies> f_sign{};  // [i][j], diagonal unused
  std::array<std::array<Sign, kSpecies>, kSpecies> g_sign{};
  std::array<int, kSpecies> a{};  // count of nondecreasing (including zero) off-diagonal entries of f_i
  std::array<int, kSpecies> b{};  // count of nonincreasing entries
  double lipschitz_f = 0.0;       // max |df_i/du_j| observed
  double lipschitz_g = 0.0;
  int samples = 0;
  bool lower_solution_ok = true;  // f_i, g_i >= 0 on the face u_i = 0

  [[nodiscard]] bool any_fail() const;
  [[nodiscard]] std::string csv() const;
};

/// Samples `samples` points uniformly in [0, box_upper] (plus theta in
/// [0,c2], psi in [0,psi_max], phi in [0,1]) and classifies the sign of
/// every off-diagonal partial derivative by central differences.
[[nodiscard]] MonotoneReport audit_quasi_monotone(const ModelParams& p, const StateVec6& box_upper, int samples,
                                                  std::uint64_t seed, double c2 = 1.0, double psi_max = 1.0);

// ---------------------------------------------------------------------------
// Michaelis-Menten enzyme kinetics

struct MMState {
  double s = 1.0;
  double e = 0.01;
  double c = 0.0;
  double p = 0.0;
  double k1 = 1.0;
  double km1 = 1.0;
  double k2 = 1.0;

  [[nodiscard]] double michaelis_constant() const { return (km1 + k2) / k1; }
};

struct MMTrajectory {
  std::vector<double> t, s, e, c, p;
  std::size_t steps = 0;
};

/// Full four-equation system, adaptive Dormand-Prince, sampled at
/// `samples`+1 uniform instants in [0, t_end]. Throws std::runtime_error
/// if the integrator stalls.
[[nodiscard]] MMTrajectory mm_simulate(const MMState& initial, double t_end, int samples = 200,
                                       double tol = 1e-12);

/// Reduced system ds/dt = -f(s), dp/dt = f(s), f(s) = k2 e0 s / (Km + s).
/// Only t, s and p are filled.
[[nodiscard]] MMTrajectory mm_reduced(double s0, double e0, double k2, double Km, double t_end, int samples = 200,
                                      double tol = 1e-12);

}  // namespace athero
