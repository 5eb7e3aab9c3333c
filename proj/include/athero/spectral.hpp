#pragma once

// Implicit diffusion solvers that diagonalize the periodic theta direction
// with a real FFT and solve the remaining coupled directions per Fourier
// mode with a banded factorization. Operators are assembled once per
// (diffusivity, dt) pair and reused every step.

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "athero/banded.hpp"
#include "athero/geometry.hpp"

namespace athero {

/// Real-to-complex transform along theta for arrays laid out as
/// [nth][block]; the spectrum is laid out as [nth/2 + 1][block].
class ThetaFft {
 public:
  ThetaFft(int nth, int block);
  ~ThetaFft();
  ThetaFft(const ThetaFft&) = delete;
  ThetaFft& operator=(const ThetaFft&) = delete;
  ThetaFft(ThetaFft&&) noexcept;
  ThetaFft& operator=(ThetaFft&&) noexcept;

  [[nodiscard]] int modes() const { return nth_ / 2 + 1; }
  [[nodiscard]] int block() const { return block_; }
  void forward(const double* in, std::complex<double>* out) const;
  /// Unnormalized inverse; overwrites `in`.
  void backward(std::complex<double>* in, double* out) const;

 private:
  struct Plans;
  int nth_ = 0;
  int block_ = 0;
  std::unique_ptr<Plans> plans_;
};

/// Solves (I - dt*d*L) u = b on the shell, L the ShellLaplacian with
/// homogeneous Neumann closure in xi (flux data belongs in b).
class ShellImplicitOperator {
 public:
  ShellImplicitOperator(const ShellGrid& grid, double diffusion, double dt, X1Closure closure = X1Closure::Dirichlet);

  /// In place: on entry the right-hand side, on exit the solution. With a
  /// Dirichlet closure the x1 end nodes are set to 0.
  void solve(std::span<double> field);

  /// max |(I - dt d L) u - b| / max(|b|, tiny) over the active nodes.
  [[nodiscard]] double relative_residual(std::span<const double> u, std::span<const double> b) const;

  [[nodiscard]] double diffusion() const { return diffusion_; }
  [[nodiscard]] double dt() const { return dt_; }

 private:
  ShellGrid grid_;
  ShellLaplacian laplacian_;
  double diffusion_;
  double dt_;
  int first_active_;
  int active_;
  ThetaFft fft_;
  std::vector<BandedLU> modes_;
  std::vector<std::complex<double>> spectrum_;
};

/// Solves (I - dt*d*(d2/dx1^2 + d2/dtheta^2)) v = b on the surface grid.
class SurfaceImplicitOperator {
 public:
  SurfaceImplicitOperator(const SurfaceGrid& grid, double diffusion, double dt,
                          X1Closure closure = X1Closure::Dirichlet);

  void solve(std::span<double> field);
  [[nodiscard]] double relative_residual(std::span<const double> v, std::span<const double> b) const;

 private:
  SurfaceGrid grid_;
  X1Closure closure_;
  double diffusion_;
  double dt_;
  int first_active_;
  int active_;
  ThetaFft fft_;
  std::vector<BandedLU> modes_;
  std::vector<std::complex<double>> spectrum_;
};

/// Five-point surface Laplacian, periodic in theta; Dirichlet end rows are 0.
void apply_surface_laplacian(const SurfaceGrid& grid, std::span<const double> v, std::span<double> out,
                             X1Closure closure = X1Closure::Dirichlet);

}  // namespace athero
