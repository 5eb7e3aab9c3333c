#include "athero/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace athero {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << std::setprecision(12);
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  const auto probe = dir / ".write_probe";
  {
    std::ofstream os(probe);
    if (!os) throw std::runtime_error("output directory not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

void write_field_csv(const std::filesystem::path& path, const ShellGrid& g, const FieldState& state) {
  auto os = open_out(path);
  os << "x1,xi2,theta,u1,u2,u3,u4,u5,u6\n";
  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < g.n1(); ++i) {
      for (int j = 0; j < g.nxi(); ++j) {
        const std::size_t n = g.index(i, j, k);
        os << g.x1(i) << ',' << g.xi(j) << ',' << g.theta(k);
        for (int s = 0; s < kSpecies; ++s) os << ',' << state.u[s][n];
        os << '\n';
      }
    }
  }
  finish(os, path);
}

void write_surface_csv(const std::filesystem::path& path, const SurfaceGrid& g, const LimitState& state) {
  auto os = open_out(path);
  os << "x1,theta,v1,v2,v3,v4,v5,v6\n";
  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < g.n1(); ++i) {
      const std::size_t q = g.index(i, k);
      os << g.x1(i) << ',' << g.theta(k);
      for (int s = 0; s < kSpecies; ++s) os << ',' << state.v[s][q];
      os << '\n';
    }
  }
  finish(os, path);
}

void write_field_vtk(const std::filesystem::path& path, const ShellGrid& g, const FieldState& state) {
  auto os = open_out(path);
  os << "# vtk DataFile Version 3.0\nshell fields\nASCII\nDATASET STRUCTURED_GRID\n";
  os << "DIMENSIONS " << g.nxi() << ' ' << g.n1() << ' ' << g.nth() << '\n';
  os << "POINTS " << g.size() << " double\n";
  for (int k = 0; k < g.nth(); ++k) {
    for (int i = 0; i < g.n1(); ++i) {
      for (int j = 0; j < g.nxi(); ++j) {
        const double r = g.radius(j);
        os << g.x1(i) << ' ' << r * std::cos(g.theta(k)) << ' ' << r * std::sin(g.theta(k)) << '\n';
      }
    }
  }
  os << "POINT_DATA " << g.size() << '\n';
  for (int s = 0; s < kSpecies; ++s) {
    os << "SCALARS u" << s + 1 << " double 1\nLOOKUP_TABLE default\n";
    for (double x : state.u[s]) os << x << '\n';
  }
  finish(os, path);
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<StepDiagnostics>& diagnostics) {
  auto os = open_out(path);
  os << "step,time,dt";
  for (int s = 1; s <= kSpecies; ++s) os << ",min_u" << s;
  for (int s = 1; s <= kSpecies; ++s) os << ",max_u" << s;
  os << ",residual\n";
  for (const auto& d : diagnostics) {
    os << d.step << ',' << d.time << ',' << d.dt;
    for (double x : d.min) os << ',' << x;
    for (double x : d.max) os << ',' << x;
    os << ',' << d.residual << '\n';
  }
  finish(os, path);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report) {
  auto os = open_out(path);
  os << "eps";
  for (int s = 1; s <= kSpecies; ++s) os << ",sup_err_" << s;
  for (int s = 1; s <= 4; ++s) os << ",grad_l2_" << s;
  os << ",runtime_s\n";
  for (const auto& r : report.records) {
    os << r.eps;
    for (double x : r.sup_err) os << ',' << x;
    for (double x : r.grad_l2) os << ',' << x;
    os << ',' << r.runtime_s() << '\n';
  }
  os << "# fitted_order_sup=" << report.sup_fit.slope << " r2=" << report.sup_fit.r2 << '\n';
  os << "# fitted_order_grad=" << report.grad_fit.slope << " r2=" << report.grad_fit.r2 << '\n';
  os << "# C0=" << report.C0 << '\n';
  for (const auto& r : report.records) {
    if (!r.failure.empty()) os << "# failure eps=" << r.eps << ": " << r.failure << '\n';
  }
  finish(os, path);
}

void write_sandwich_csv(const std::filesystem::path& path, const SandwichReport& report) {
  auto os = open_out(path);
  os << "species,max_neg,max_over\n";
  for (int s = 0; s < kSpecies; ++s) os << s + 1 << ',' << report.max_neg[s] << ',' << report.max_over[s] << '\n';
  finish(os, path);
}

void write_audit_csv(const std::filesystem::path& path, const MonotoneReport& report) {
  auto os = open_out(path);
  os << report.csv();
  finish(os, path);
}

void Manifest::add(std::string key, double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  entries.emplace_back(std::move(key), os.str());
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  auto os = open_out(path);
  os << "command: " << m.command << '\n';
  os << "config_hash: " << std::hex << std::setw(16) << std::setfill('0') << config_hash(m.config_text) << std::dec
     << std::setfill(' ') << '\n';
  for (const auto& [k, v] : m.entries) os << k << ": " << v << '\n';
  if (!m.config_text.empty()) {
    os << "--- config ---\n" << m.config_text;
    if (m.config_text.back() != '\n') os << '\n';
  }
  finish(os, path);
}

std::string grid_summary(const ShellGrid& g) {
  std::ostringstream os;
  os << "n1=" << g.n1() << " nxi=" << g.nxi() << " nth=" << g.nth() << " eps=" << g.eps() << " ell=" << g.ell();
  return os.str();
}

}  // namespace athero
