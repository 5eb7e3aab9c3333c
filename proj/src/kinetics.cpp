#include "athero/kinetics.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace athero {

namespace {

void require_state(const StateVec6& u) {
  for (double x : u) {
    if (!std::isfinite(x)) throw std::domain_error("kinetics: non-finite concentration");
    if (x < 0.0) throw std::domain_error("kinetics: negative concentration");
  }
}

void require_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error(std::string("kinetics: invalid ") + what);
}

// x/(lambda + x)
inline double sat(double x, double lambda) { return x / (lambda + x); }

// x^p/(1 + x^p), with x^p = exp(p ln x) and 0 at the origin.
inline double hill(double x, double p) {
  if (x == 0.0) return 0.0;
  const double xp = std::exp(p * std::log(x));
  return xp / (1.0 + xp);
}

StateVec6 boundary_terms(const StateVec6& u, double phi1, double phi2, const ModelParams& p,
                         const std::array<double, 5>& w) {
  require_state(u);
  require_nonneg(phi1, "phi1");
  require_nonneg(phi2, "phi2");
  StateVec6 g{};
  if (phi1 != 0.0) {
    g[0] = phi1 * (w[0] * p.eta(1) * sat(u[0], 1.0) + w[1] * p.eta(2) * hill(u[5], p.p3));
  }
  if (phi2 != 0.0) {
    g[2] = phi2 * (w[2] * p.eta(3) * sat(u[1], 1.0) + w[3] * p.eta(4) * hill(u[4], p.p1) / (p.lambda(9) + u[3]));
    g[3] = -phi2 * w[4] * p.eta(5) * hill(u[3], p.p2);
  }
  return g;
}

}  // namespace

StateVec6 eval_F(const StateVec6& u, double theta, double psi, const ModelParams& p) {
  require_state(u);
  require_nonneg(theta, "theta");
  require_nonneg(psi, "psi");
  const auto& [u1, u2, u3, u4, u5, u6] = u;
  StateVec6 f;
  f[0] = -theta * u1 + psi;
  f[1] = p.mu(1) * theta * u1 - p.mu(2) * sat(u2, p.lambda(1)) * u5 - p.mu(3) * sat(u2, p.lambda(2)) * u4;
  f[2] = -p.mu(4) * sat(u3, 1.0) - p.mu(5) * sat(u3, p.lambda(3)) - p.delta(3) * u3;
  f[3] = p.mu(6) * sat(u3, 1.0) + p.mu(7) * sat(u2, p.lambda(4)) * u4 - p.delta(4) * u4;
  f[4] = p.mu(8) * sat(u3, p.lambda(5)) + p.mu(9) * sat(u2, p.lambda(6)) * u5 - p.mu(10) * sat(u5, p.lambda(7)) -
         p.delta(5) * u5;
  f[5] = p.mu(11) * sat(u5, p.lambda(8)) - p.delta(6) * u6;
  return f;
}

StateVec6 eval_G(const StateVec6& u, double phi1, double phi2, const ModelParams& p) {
  return boundary_terms(u, phi1, phi2, p, {1.0, 1.0, 1.0, 1.0, 1.0});
}

StateVec6 eval_G_scaled(const StateVec6& u, double phi1, double phi2, const ModelParams& p) {
  std::array<double, 5> w{};
  for (int k = 0; k < 5; ++k) w[k] = std::pow(p.eps, p.rho(k + 1));
  return boundary_terms(u, phi1, phi2, p, w);
}

StateVec6 eval_G_limit(const StateVec6& v, double phi1, double phi2, const ModelParams& p) {
  std::array<double, 5> w{};
  for (int k = 0; k < 5; ++k) w[k] = p.rho(k + 1) == 1.0 ? 1.0 : 0.0;
  return boundary_terms(v, phi1, phi2, p, w);
}

StateVec6 eval_F0(const StateVec6& v, double theta, double psi, double phi1, double phi2, const ModelParams& p) {
  StateVec6 f = eval_F(v, theta, psi, p);
  const StateVec6 g = eval_G_limit(v, phi1, phi2, p);
  for (int i = 0; i < 4; ++i) f[i] += g[i];
  return f;
}

StateVec6 eval_upper_F(const StateVec6& u, double theta, double psi, const ModelParams& p) {
  require_state(u);
  require_nonneg(theta, "theta");
  require_nonneg(psi, "psi");
  return {psi, p.mu(1) * theta * u[0], 0.0, p.mu(6) + p.mu(7) * u[3], p.mu(8) + p.mu(9) * u[4], p.mu(11)};
}

StateVec6 eval_upper_G(double phi1, double phi2, const ModelParams& p) {
  require_nonneg(phi1, "phi1");
  require_nonneg(phi2, "phi2");
  return {(p.gamma(1) + p.gamma(2)) * phi1, 0.0, (p.gamma(3) + p.gamma(4) / p.lambda(9)) * phi2, 0.0, 0.0, 0.0};
}

// ---------------------------------------------------------------------------

const char* sign_symbol(Sign s) {
  switch (s) {
    case Sign::Zero: return "0";
    case Sign::Nondecreasing: return "+";
    case Sign::Nonincreasing: return "-";
    case Sign::Fail: return "FAIL";
  }
  return "?";
}

bool MonotoneReport::any_fail() const {
  for (int i = 0; i < kSpecies; ++i) {
    for (int j = 0; j < kSpecies; ++j) {
      if (i == j) continue;
      if (f_sign[i][j] == Sign::Fail || g_sign[i][j] == Sign::Fail) return true;
    }
  }
  return false;
}

std::string MonotoneReport::csv() const {
  std::ostringstream os;
  os << "function,i,j,sign\n";
  for (const auto& [name, m] : {std::pair{"f", &f_sign}, std::pair{"g", &g_sign}}) {
    for (int i = 0; i < kSpecies; ++i) {
      for (int j = 0; j < kSpecies; ++j) {
        if (i != j) os << name << ',' << i + 1 << ',' << j + 1 << ',' << sign_symbol((*m)[i][j]) << '\n';
      }
    }
  }
  return os.str();
}

MonotoneReport audit_quasi_monotone(const ModelParams& p, const StateVec6& box_upper, int samples,
                                    std::uint64_t seed, double c2, double psi_max) {
  for (double b : box_upper) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("audit box must be positive and finite");
  }
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::array<std::array<bool, kSpecies>, kSpecies> fpos{}, fneg{}, gpos{}, gneg{};
  MonotoneReport report;
  report.samples = samples;

  for (int n = 0; n < samples; ++n) {
    StateVec6 u;
    for (int j = 0; j < kSpecies; ++j) u[j] = unit(rng) * box_upper[j];
    const double theta = unit(rng) * c2;
    const double psi = unit(rng) * psi_max;
    const double phi1 = unit(rng);
    const double phi2 = unit(rng);

    for (int j = 0; j < kSpecies; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(u[j]));
      StateVec6 up = u;
      StateVec6 lo = u;
      up[j] += h;
      double span = h;
      if (u[j] >= h) {
        lo[j] -= h;
        span = 2.0 * h;
      }
      const StateVec6 fu = eval_F(up, theta, psi, p);
      const StateVec6 fl = eval_F(lo, theta, psi, p);
      const StateVec6 gu = eval_G(up, phi1, phi2, p);
      const StateVec6 gl = eval_G(lo, phi1, phi2, p);
      for (int i = 0; i < kSpecies; ++i) {
        const double df = (fu[i] - fl[i]) / span;
        const double dg = (gu[i] - gl[i]) / span;
        report.lipschitz_f = std::max(report.lipschitz_f, std::abs(df));
        report.lipschitz_g = std::max(report.lipschitz_g, std::abs(dg));
        if (i == j) continue;
        fpos[i][j] = fpos[i][j] || df > kTol;
        fneg[i][j] = fneg[i][j] || df < -kTol;
        gpos[i][j] = gpos[i][j] || dg > kTol;
        gneg[i][j] = gneg[i][j] || dg < -kTol;
      }
    }

    // Zero is a lower solution: f_i and g_i must be nonnegative on the face u_i = 0.
    for (int i = 0; i < kSpecies; ++i) {
      StateVec6 face = u;
      face[i] = 0.0;
      if (eval_F(face, theta, psi, p)[i] < 0.0 || eval_G(face, phi1, phi2, p)[i] < 0.0)
        report.lower_solution_ok = false;
    }
  }

  auto classify = [](bool pos, bool neg) {
    if (pos && neg) return Sign::Fail;
    if (pos) return Sign::Nondecreasing;
    if (neg) return Sign::Nonincreasing;
    return Sign::Zero;
  };
  for (int i = 0; i < kSpecies; ++i) {
    for (int j = 0; j < kSpecies; ++j) {
      if (i == j) continue;
      report.f_sign[i][j] = classify(fpos[i][j], fneg[i][j]);
      report.g_sign[i][j] = classify(gpos[i][j], gneg[i][j]);
      if (report.f_sign[i][j] == Sign::Nonincreasing) {
        ++report.b[i];
      } else if (report.f_sign[i][j] != Sign::Fail) {
        ++report.a[i];
      }
    }
  }
  return report;
}

}  // namespace athero
