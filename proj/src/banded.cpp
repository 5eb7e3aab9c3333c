#include "athero/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace athero {

BandedLU::BandedLU(int n, int lower, int upper)
    : n_(n), kl_(lower), ku_(upper), width_(lower + upper + 1), band_(static_cast<std::size_t>(n) * width_, 0.0) {
  if (n <= 0 || lower < 0 || upper < 0) throw std::invalid_argument("invalid banded matrix shape");
}

void BandedLU::factorize() {
  if (factored_) return;
  for (int k = 0; k < n_; ++k) {
    const double pivot = at(k, k);
    if (pivot == 0.0 || !std::isfinite(pivot)) throw std::runtime_error("banded LU: zero or non-finite pivot");
    const int rmax = std::min(n_ - 1, k + kl_);
    const int cmax = std::min(n_ - 1, k + ku_);
    for (int r = k + 1; r <= rmax; ++r) {
      const double m = at(r, k) / pivot;
      at(r, k) = m;
      if (m == 0.0) continue;
      for (int c = k + 1; c <= cmax; ++c) at(r, c) -= m * at(k, c);
    }
  }
  factored_ = true;
}

void BandedLU::solve(double* x, std::ptrdiff_t stride) const {
  if (!factored_) throw std::logic_error("banded LU: solve before factorize");
  for (int r = 1; r < n_; ++r) {
    double acc = x[r * stride];
    for (int c = std::max(0, r - kl_); c < r; ++c) acc -= at(r, c) * x[c * stride];
    x[r * stride] = acc;
  }
  for (int r = n_ - 1; r >= 0; --r) {
    double acc = x[r * stride];
    const int cmax = std::min(n_ - 1, r + ku_);
    for (int c = r + 1; c <= cmax; ++c) acc -= at(r, c) * x[c * stride];
    x[r * stride] = acc / at(r, r);
  }
}

}  // namespace athero
