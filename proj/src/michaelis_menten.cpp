#include <boost/numeric/odeint.hpp>

#include <array>
#include <stdexcept>

#include "athero/kinetics.hpp"

namespace athero {

namespace odeint = boost::numeric::odeint;

namespace {

std::vector<double> sample_times(double t_end, int samples) {
  if (!(t_end > 0.0) || samples < 1) throw std::invalid_argument("mm: need t_end > 0 and samples >= 1");
  std::vector<double> t(static_cast<std::size_t>(samples) + 1);
  for (int n = 0; n <= samples; ++n) t[n] = t_end * n / samples;
  return t;
}

template <class State, class System, class Observer>
std::size_t integrate_sampled(System sys, State& x, const std::vector<double>& times, double tol, Observer obs) {
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  const double dt0 = (times.back() - times.front()) * 1e-6;
  try {
    return odeint::integrate_times(stepper, sys, x, times.begin(), times.end(), dt0, obs,
                                   odeint::max_step_checker(1000000));
  } catch (const odeint::odeint_error& e) {
    throw std::runtime_error(std::string("mm: integrator failure: ") + e.what());
  }
}

}  // namespace

MMTrajectory mm_simulate(const MMState& init, double t_end, int samples, double tol) {
  if (!(init.k1 > 0.0 && init.km1 > 0.0 && init.k2 > 0.0)) throw std::invalid_argument("mm: rates must be positive");
  if (!(init.s > 0.0 && init.e > 0.0)) throw std::invalid_argument("mm: s0 and e0 must be positive");
  const double k1 = init.k1, km1 = init.km1, k2 = init.k2;
  using State = std::array<double, 4>;
  auto rhs = [=](const State& x, State& dx, double) {
    const double bind = k1 * x[1] * x[0];
    dx[0] = -bind + km1 * x[2];
    dx[1] = -bind + (km1 + k2) * x[2];
    dx[2] = bind - (km1 + k2) * x[2];
    dx[3] = k2 * x[2];
  };
  MMTrajectory tr;
  State x{init.s, init.e, init.c, init.p};
  const auto times = sample_times(t_end, samples);
  tr.steps = integrate_sampled(rhs, x, times, tol, [&](const State& st, double t) {
    tr.t.push_back(t);
    tr.s.push_back(st[0]);
    tr.e.push_back(st[1]);
    tr.c.push_back(st[2]);
    tr.p.push_back(st[3]);
  });
  return tr;
}

MMTrajectory mm_reduced(double s0, double e0, double k2, double Km, double t_end, int samples, double tol) {
  if (!(s0 > 0.0 && e0 > 0.0 && k2 > 0.0 && Km > 0.0)) throw std::invalid_argument("mm: parameters must be positive");
  using State = std::array<double, 2>;
  auto rhs = [=](const State& x, State& dx, double) {
    const double rate = k2 * e0 * x[0] / (Km + x[0]);
    dx[0] = -rate;
    dx[1] = rate;
  };
  MMTrajectory tr;
  State x{s0, 0.0};
  const auto times = sample_times(t_end, samples);
  tr.steps = integrate_sampled(rhs, x, times, tol, [&](const State& st, double t) {
    tr.t.push_back(t);
    tr.s.push_back(st[0]);
    tr.p.push_back(st[1]);
  });
  return tr;
}

}  // namespace athero
