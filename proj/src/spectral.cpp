#include "athero/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace athero {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double theta_symbol(int mode, int nth) {
  const double s = std::sin(std::numbers::pi * mode / nth);
  return -4.0 * s * s;
}

}  // namespace

struct ThetaFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

ThetaFft::ThetaFft(int nth, int block) : nth_(nth), block_(block), plans_(std::make_unique<Plans>()) {
  if (nth < 2 || block < 1) throw std::invalid_argument("invalid theta transform shape");
  const int modes = nth / 2 + 1;
  std::vector<double> real(static_cast<std::size_t>(nth) * block);
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(modes) * block);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  int n[] = {nth};
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_many_dft_r2c(1, n, block, real.data(), nullptr, block, 1, c, nullptr, block, 1,
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward = fftw_plan_many_dft_c2r(1, n, block, c, nullptr, block, 1, real.data(), nullptr, block, 1,
                                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans_->forward == nullptr || plans_->backward == nullptr) throw std::runtime_error("FFTW planning failed");
}

ThetaFft::~ThetaFft() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  if (plans_->forward != nullptr) fftw_destroy_plan(plans_->forward);
  if (plans_->backward != nullptr) fftw_destroy_plan(plans_->backward);
}

ThetaFft::ThetaFft(ThetaFft&&) noexcept = default;
ThetaFft& ThetaFft::operator=(ThetaFft&&) noexcept = default;

void ThetaFft::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void ThetaFft::backward(std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(in), out);
}

// ---------------------------------------------------------------------------

ShellImplicitOperator::ShellImplicitOperator(const ShellGrid& grid, double diffusion, double dt, X1Closure closure)
    : grid_(grid),
      laplacian_(grid, closure),
      diffusion_(diffusion),
      dt_(dt),
      first_active_(closure == X1Closure::Dirichlet ? 1 : 0),
      active_(closure == X1Closure::Dirichlet ? grid.n1() - 2 : grid.n1()),
      fft_(grid.nth(), grid.n1() * grid.nxi()),
      spectrum_(static_cast<std::size_t>(grid.nth() / 2 + 1) * grid.n1() * grid.nxi()) {
  if (!(diffusion >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("implicit operator needs d >= 0, dt > 0");
  const int nxi = grid.nxi();
  const double c1 = 1.0 / (grid.h1() * grid.h1());
  const double s = dt * diffusion;
  const bool neumann = closure == X1Closure::Neumann;

  modes_.reserve(fft_.modes());
  for (int m = 0; m < fft_.modes(); ++m) {
    const double sym = theta_symbol(m, grid.nth());
    BandedLU a(active_ * nxi, nxi, nxi);
    for (int ia = 0; ia < active_; ++ia) {
      for (int j = 0; j < nxi; ++j) {
        const int row = ia * nxi + j;
        const double diag = -2.0 * c1 + laplacian_.xi_centre(j) + laplacian_.theta_coeff(j) * sym;
        a.at(row, row) = 1.0 - s * diag;
        if (j > 0) a.at(row, row - 1) = -s * laplacian_.xi_lower(j);
        if (j < nxi - 1) a.at(row, row + 1) = -s * laplacian_.xi_upper(j);
        const double left = (neumann && ia == active_ - 1) ? 2.0 * c1 : c1;
        const double right = (neumann && ia == 0) ? 2.0 * c1 : c1;
        if (ia > 0) a.at(row, row - nxi) = -s * left;
        if (ia < active_ - 1) a.at(row, row + nxi) = -s * right;
      }
    }
    a.factorize();
    modes_.push_back(std::move(a));
  }
}

void ShellImplicitOperator::solve(std::span<double> field) {
  if (field.size() != grid_.size()) throw std::invalid_argument("field size mismatch");
  const int block = grid_.n1() * grid_.nxi();
  fft_.forward(field.data(), spectrum_.data());
  const std::size_t skip = static_cast<std::size_t>(first_active_) * grid_.nxi();
  for (int m = 0; m < fft_.modes(); ++m) {
    auto* base = reinterpret_cast<double*>(spectrum_.data() + static_cast<std::size_t>(m) * block + skip);
    modes_[m].solve(base, 2);
    modes_[m].solve(base + 1, 2);
  }
  fft_.backward(spectrum_.data(), field.data());
  const double scale = 1.0 / grid_.nth();
  for (double& v : field) v *= scale;
  if (first_active_ == 1) {
    for (int k = 0; k < grid_.nth(); ++k) {
      for (int j = 0; j < grid_.nxi(); ++j) {
        field[grid_.index(0, j, k)] = 0.0;
        field[grid_.index(grid_.n1() - 1, j, k)] = 0.0;
      }
    }
  }
}

double ShellImplicitOperator::relative_residual(std::span<const double> u, std::span<const double> b) const {
  Field lu(grid_.size());
  laplacian_.apply(u, lu);
  double rmax = 0.0;
  double bmax = 0.0;
  for (int k = 0; k < grid_.nth(); ++k) {
    for (int i = first_active_; i < first_active_ + active_; ++i) {
      for (int j = 0; j < grid_.nxi(); ++j) {
        const auto q = grid_.index(i, j, k);
        rmax = std::max(rmax, std::abs(u[q] - dt_ * diffusion_ * lu[q] - b[q]));
        bmax = std::max(bmax, std::abs(b[q]));
      }
    }
  }
  return rmax / std::max(bmax, 1e-300);
}

// ---------------------------------------------------------------------------

SurfaceImplicitOperator::SurfaceImplicitOperator(const SurfaceGrid& grid, double diffusion, double dt,
                                                 X1Closure closure)
    : grid_(grid),
      closure_(closure),
      diffusion_(diffusion),
      dt_(dt),
      first_active_(closure == X1Closure::Dirichlet ? 1 : 0),
      active_(closure == X1Closure::Dirichlet ? grid.n1() - 2 : grid.n1()),
      fft_(grid.nth(), grid.n1()),
      spectrum_(static_cast<std::size_t>(grid.nth() / 2 + 1) * grid.n1()) {
  if (!(diffusion >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("implicit operator needs d >= 0, dt > 0");
  const double c1 = 1.0 / (grid.h1() * grid.h1());
  const double cth = 1.0 / (grid.hth() * grid.hth());
  const double s = dt * diffusion;
  const bool neumann = closure == X1Closure::Neumann;
  modes_.reserve(fft_.modes());
  for (int m = 0; m < fft_.modes(); ++m) {
    const double sym = theta_symbol(m, grid.nth());
    BandedLU a(active_, 1, 1);
    for (int ia = 0; ia < active_; ++ia) {
      a.at(ia, ia) = 1.0 - s * (-2.0 * c1 + cth * sym);
      const double left = (neumann && ia == active_ - 1) ? 2.0 * c1 : c1;
      const double right = (neumann && ia == 0) ? 2.0 * c1 : c1;
      if (ia > 0) a.at(ia, ia - 1) = -s * left;
      if (ia < active_ - 1) a.at(ia, ia + 1) = -s * right;
    }
    a.factorize();
    modes_.push_back(std::move(a));
  }
}

void SurfaceImplicitOperator::solve(std::span<double> field) {
  if (field.size() != grid_.size()) throw std::invalid_argument("field size mismatch");
  const int block = grid_.n1();
  fft_.forward(field.data(), spectrum_.data());
  for (int m = 0; m < fft_.modes(); ++m) {
    auto* base = reinterpret_cast<double*>(spectrum_.data() + static_cast<std::size_t>(m) * block + first_active_);
    modes_[m].solve(base, 2);
    modes_[m].solve(base + 1, 2);
  }
  fft_.backward(spectrum_.data(), field.data());
  const double scale = 1.0 / grid_.nth();
  for (double& v : field) v *= scale;
  if (first_active_ == 1) {
    for (int k = 0; k < grid_.nth(); ++k) {
      field[grid_.index(0, k)] = 0.0;
      field[grid_.index(grid_.n1() - 1, k)] = 0.0;
    }
  }
}

double SurfaceImplicitOperator::relative_residual(std::span<const double> v, std::span<const double> b) const {
  Field lv(grid_.size());
  apply_surface_laplacian(grid_, v, lv, closure_);
  double rmax = 0.0;
  double bmax = 0.0;
  for (int k = 0; k < grid_.nth(); ++k) {
    for (int i = first_active_; i < first_active_ + active_; ++i) {
      const auto q = grid_.index(i, k);
      rmax = std::max(rmax, std::abs(v[q] - dt_ * diffusion_ * lv[q] - b[q]));
      bmax = std::max(bmax, std::abs(b[q]));
    }
  }
  return rmax / std::max(bmax, 1e-300);
}

void apply_surface_laplacian(const SurfaceGrid& g, std::span<const double> v, std::span<double> out,
                             X1Closure closure) {
  if (v.size() != g.size() || out.size() != g.size()) throw std::invalid_argument("field size mismatch");
  const int n1 = g.n1();
  const int nth = g.nth();
  const double c1 = 1.0 / (g.h1() * g.h1());
  const double cth = 1.0 / (g.hth() * g.hth());
  for (int k = 0; k < nth; ++k) {
    const int km = (k + nth - 1) % nth;
    const int kp = (k + 1) % nth;
    for (int i = 0; i < n1; ++i) {
      if (closure == X1Closure::Dirichlet && (i == 0 || i == n1 - 1)) {
        out[g.index(i, k)] = 0.0;
        continue;
      }
      const int im = i == 0 ? 1 : i - 1;
      const int ip = i == n1 - 1 ? n1 - 2 : i + 1;
      const double c = v[g.index(i, k)];
      out[g.index(i, k)] = c1 * (v[g.index(im, k)] - 2.0 * c + v[g.index(ip, k)]) +
                           cth * (v[g.index(i, km)] - 2.0 * c + v[g.index(i, kp)]);
    }
  }
}

}  // namespace athero
