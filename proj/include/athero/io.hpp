#pragma once

// CSV / legacy-VTK writers and the plain-text run manifest.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "athero/harness.hpp"

namespace athero {

/// Creates `dir` if needed; throws std::runtime_error if it is not writable.
void ensure_output_dir(const std::filesystem::path& dir);

/// One row per node: x1, xi2, theta, u1..u6.
void write_field_csv(const std::filesystem::path& path, const ShellGrid& grid, const FieldState& state);
/// One row per surface node: x1, theta, v1..v6.
void write_surface_csv(const std::filesystem::path& path, const SurfaceGrid& grid, const LimitState& state);
/// Structured-grid legacy VTK in Cartesian coordinates (y = r cos theta, z = r sin theta).
void write_field_vtk(const std::filesystem::path& path, const ShellGrid& grid, const FieldState& state);

/// step, time, dt, min_u1..min_u6, max_u1..max_u6, residual.
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<StepDiagnostics>& diagnostics);
/// eps, sup_err_1..6, grad_l2_1..4, runtime_s, then '#' footer lines with the fits.
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);
/// species, max_neg, max_over.
void write_sandwich_csv(const std::filesystem::path& path, const SandwichReport& report);
void write_audit_csv(const std::filesystem::path& path, const MonotoneReport& report);

struct Manifest {
  std::string command;
  std::string config_text;
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value);
};

/// manifest.txt: command, config hash, the key/value entries and the config echo.
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

[[nodiscard]] std::string grid_summary(const ShellGrid& grid);

}  // namespace athero
