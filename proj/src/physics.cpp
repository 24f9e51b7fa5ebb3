#include "bellmc/physics.hpp"

#include <cmath>

namespace bellmc {

double find_violation_boundary() {
  // S - 2 is positive at 0.9 rad and negative at 1.5 rad.
  double lo = 0.9;
  double hi = 1.5;
  constexpr double kTol = 1e-10;
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    if (chsh_s_photon(mid) - 2.0 > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

PhotonSMax photon_s_max() {
  // Golden-section maximum of S on [0, pi/2]; S is unimodal there.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0;
  double hi = 1.5707963267948966;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = chsh_s_photon(x1);
  double f2 = chsh_s_photon(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = chsh_s_photon(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = chsh_s_photon(x1);
    }
  }
  const double theta = 0.5 * (lo + hi);
  return {theta, chsh_s_photon(theta)};
}

double rate_joint(const FlavorPair& flavors, const TimePair& times,
                  const PhysicsParams& params) {
  times.validate();
  flavors.validate();
  params.validate();
  const double tau = params.tau_b;
  const double dt = times.dt();
  const double envelope =
      std::exp(-2.0 * times.t_min() / tau) * std::exp(-dt / tau) /
      (tau * tau);
  const double osc = std::cos(params.delta_m * dt);
  const double mix = flavors.same_flavor() ? (1.0 - osc) : (1.0 + osc);
  return envelope * mix / 4.0;
}

double correlation_damped(const TimePair& times, const PhysicsParams& params) {
  times.validate();
  params.validate();
  const double tau = params.tau_b;
  const double dt = times.dt();
  return -std::exp(-2.0 * times.t_min() / tau) * std::exp(-dt / tau) *
         std::cos(params.delta_m * dt);
}

double correlation_renormalized(double dt, const PhysicsParams& params) {
  if (dt < 0.0) throw std::invalid_argument("dt must be nonnegative");
  params.validate();
  return std::cos(params.delta_m * dt);
}

double chsh_s_meson(double dt, const PhysicsParams& params) {
  return 3.0 * correlation_renormalized(dt, params) -
         correlation_renormalized(3.0 * dt, params);
}

}  // namespace bellmc
