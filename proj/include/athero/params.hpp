#pragma once

// Nondimensional model constants, scenario configuration and the
// dimensional-to-nondimensional conversion.

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace athero {

inline constexpr int kSpecies = 6;

/// Raised for malformed or unknown configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensional inputs. Diffusivities in cm^2/day, lengths in cm,
/// alpha0 in g/(cm^2 day), k0 in g/cm^3.
struct DimensionalParams {
  double d_L = 29.89;
  double d_Lox = 29.89;
  double d_m = 1.0;
  double d_M2 = 1.0;
  double d_M1 = 6.47e-5;
  double d_F = 8.64e-7;
  double R = 1.0;
  double rho0 = 0.05;
  double l = 2.0;
  double alpha0 = 3.0e-4;
  double k0 = 7.0e-4;
};

/// All nondimensional constants of the thin-shell model.
///
/// Arrays are stored zero-based; use the one-based accessors (`mu(3)` is
/// mu_3) when transcribing formulas.
struct ModelParams {
  std::array<double, 11> mu_v{1.0, 1.0, 0.5, 1.0, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0, 1.0};
  std::array<double, 9> lambda_v{1.0, 0.5, 0.5, 1.0, 0.5, 1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> delta_v{0.1, 0.1, 0.1, 0.1};  // delta_3 .. delta_6
  std::array<double, 5> eta_v{1.0, 1.0, 1.0, 1.0, 1.0};
  double p1 = 2.0;
  double p2 = 2.0;
  double p3 = 2.0;
  double d2 = 1.0;
  double d3 = 0.5;
  double d4 = 0.5;
  double tau1 = 4.35;
  double tau2 = 5.8;
  std::array<double, 5> rho_v{1.0, 1.0, 1.0, 1.0, 1.0};
  double eps = 0.05;
  double ell = 2.0;
  double T = 1.0;

  [[nodiscard]] double mu(int i) const { return mu_v.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] double lambda(int i) const { return lambda_v.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] double delta(int i) const { return delta_v.at(static_cast<std::size_t>(i - 3)); }
  [[nodiscard]] double eta(int i) const { return eta_v.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] double rho(int i) const { return rho_v.at(static_cast<std::size_t>(i - 1)); }

  /// Diffusion coefficient of species s (0-based): 1, d2, d3, d4, eps^tau1, eps^tau2.
  [[nodiscard]] double diffusion(int s) const;
  /// gamma_k = eps^rho_k * eta_k (k = 1..5).
  [[nodiscard]] double gamma(int k) const;
};

/// Oxidation intensity Theta and LDL source psi amplitudes.
struct ForcingSettings {
  double c2 = 1.0;
  double psi0 = 1.0;
  double ramp_time = 0.2;
};

/// Endothelial patch geometry. x1 quantities are fractions of ell.
struct PatchSettings {
  double center_x1_frac = 0.5;
  double center_theta = std::numbers::pi;
  double omega_half_x1_frac = 0.125;
  double omega_half_theta = std::numbers::pi / 4.0;
  double Omega_half_x1_frac = 0.25;
  double Omega_half_theta = std::numbers::pi / 2.0;
  double plateau = 1.0;
};

/// Node counts; 0 selects the refinement policy.
struct GridSettings {
  int n1 = 0;
  int nxi = 9;
  int nth = 0;
};

struct RunSettings {
  double dt = 0.0;  // 0 selects the dt policy
  int samples = 20;
  double tol_pos = 1e-10;
  std::uint64_t seed = 42;
  int audit_samples = 10000;
};

struct Scenario {
  ModelParams model;
  ForcingSettings forcing;
  PatchSettings patches;
  GridSettings grid;
  RunSettings run;
};

struct Violation {
  std::string constraint;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has(std::string_view constraint) const;
  [[nodiscard]] std::string summary() const;
};

[[nodiscard]] ValidationReport validate(const ModelParams& params);
[[nodiscard]] ValidationReport validate(const Scenario& scenario);
[[nodiscard]] ValidationReport validate(const DimensionalParams& dp);

/// Nondimensional quantities derived from dimensional data.
struct NondimensionalScales {
  double eps = 0.0;
  double ell = 0.0;
  std::array<double, 5> d{};  // d2 .. d6
  double gamma1 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double time_scale = 0.0;  // t* = (d_L / R^2) t, in 1/day

  [[nodiscard]] double d_ratio(int i) const { return d.at(static_cast<std::size_t>(i - 2)); }
};

/// Throws std::invalid_argument if eps = rho0/R is outside (0,1) or any
/// ratio is nonpositive.
[[nodiscard]] NondimensionalScales from_dimensional(const DimensionalParams& dp);

/// Key=value parser; '#' starts a comment. Unknown keys are rejected.
[[nodiscard]] Scenario parse_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario(const std::string& path);
[[nodiscard]] std::string to_config_text(const Scenario& scenario);

/// FNV-1a 64-bit hash, used to tag run manifests.
[[nodiscard]] std::uint64_t config_hash(std::string_view text);

}  // namespace athero
