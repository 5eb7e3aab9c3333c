#pragma once

#include <cstddef>
#include <vector>

namespace athero {

/// Banded matrix with in-place LU factorization without pivoting.
///
/// Only intended for diagonally dominant systems (implicit diffusion
/// operators), where elimination without row exchanges is stable.
class BandedLU {
 public:
  BandedLU() = default;
  BandedLU(int n, int lower, int upper);

  [[nodiscard]] int size() const { return n_; }
  /// Entry (r, c); requires -lower <= c - r <= upper.
  double& at(int r, int c) { return band_[offset(r, c)]; }
  [[nodiscard]] double at(int r, int c) const { return band_[offset(r, c)]; }

  void factorize();
  /// Solves A x = b in place for a vector whose entries are `stride` apart.
  void solve(double* x, std::ptrdiff_t stride = 1) const;

 private:
  [[nodiscard]] std::size_t offset(int r, int c) const {
    return static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(c - r + kl_);
  }

  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  int width_ = 1;
  bool factored_ = false;
  std::vector<double> band_;
};

}  // namespace athero
