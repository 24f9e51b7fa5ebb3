#pragma once

#include <cmath>
#include <stdexcept>

namespace bellmc {

/// Oscillation / lifetime / boost constants driving all closed-form results.
struct PhysicsParams {
  double tau_b = 1.542;     // mean B0 lifetime [ps]
  double delta_m = 0.507;   // mixing frequency delta_m_d [rad/ps]
  double beta_gamma = 0.425;  // Lorentz boost of the Upsilon(4S), dimensionless

  void validate() const {
    if (!(tau_b > 0.0)) throw std::invalid_argument("tau_b must be > 0");
    if (!(delta_m >= 0.0)) throw std::invalid_argument("delta_m must be >= 0");
    if (!(beta_gamma > 0.0))
      throw std::invalid_argument("beta_gamma must be > 0");
  }
};

/// Analyzer angles [rad]; the one-parameter family is (0, 2t, t, 3t).
struct AngleSettings {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;

  static AngleSettings one_parameter(double theta) {
    return {0.0, 2.0 * theta, theta, 3.0 * theta};
  }
};

/// Proper decay times of the two mesons [ps], both nonnegative.
struct TimePair {
  double t_a = 0.0;
  double t_b = 0.0;

  double t_min() const { return t_a < t_b ? t_a : t_b; }
  double dt() const { return std::fabs(t_a - t_b); }

  void validate() const {
    if (t_a < 0.0 || t_b < 0.0)
      throw std::invalid_argument("decay times must be nonnegative");
  }
};

/// Flavor outcomes, +1 = B0 and -1 = B0bar on each side.
struct FlavorPair {
  int side_a = +1;
  int side_b = +1;

  bool same_flavor() const { return side_a == side_b; }

  void validate() const {
    if ((side_a != 1 && side_a != -1) || (side_b != 1 && side_b != -1))
      throw std::invalid_argument("flavors must be +1 or -1");
  }
};

/// Two-photon-style correlation of analyzer settings: cos(alpha - beta).
inline double correlation_qm(double alpha, double beta) {
  return std::cos(alpha - beta);
}

/// Full CHSH combination for four analyzer settings:
/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
inline double chsh_s_angles(const AngleSettings& s) {
  return correlation_qm(s.alpha, s.beta) -
         correlation_qm(s.alpha, s.beta_prime) +
         correlation_qm(s.alpha_prime, s.beta) +
         correlation_qm(s.alpha_prime, s.beta_prime);
}

/// CHSH statistic for the one-parameter settings family (0, 2t, t, 3t):
/// S(theta) = 3 cos(theta) - cos(3 theta).  Local models obey S <= 2.
inline double chsh_s_photon(double theta) {
  return 3.0 * std::cos(theta) - std::cos(3.0 * theta);
}

/// Smallest theta > 0 with chsh_s_photon(theta) = 2 (end of the violation
/// range).  Bisection on [0.9, 1.5] rad where S - 2 changes sign exactly
/// once; absolute tolerance 1e-10.  Closed form: arccos((sqrt(3)-1)/2).
double find_violation_boundary();

/// Location and value of the CHSH maximum over theta in [0, pi/2].
struct PhotonSMax {
  double theta;
  double s;
};
PhotonSMax photon_s_max();

/// Joint decay-rate density [ps^-2] for one flavor pair at (t_a, t_b):
///   (1/tau^2) e^{-2 t'/tau} e^{-dt/tau} (1 -+ cos(dm dt)) / 4
/// with "-" for same-flavor and "+" for opposite-flavor pairs.  Normalized
/// so the sum over the four flavor pairs integrates to 1 over all times.
double rate_joint(const FlavorPair& flavors, const TimePair& times,
                  const PhysicsParams& params);

/// Decay-damped correlation function:
///   E(t_a, t_b) = -e^{-2 t'/tau} e^{-dt/tau} cos(dm dt)
/// This cannot violate the CHSH bound for B-meson parameters.
double correlation_damped(const TimePair& times, const PhysicsParams& params);

/// Correlation renormalized to undecayed pairs: E_R(dt) = cos(dm dt).
double correlation_renormalized(double dt, const PhysicsParams& params);

/// CHSH statistic in the decay-time-difference setting:
///   S(dt) = 3 E_R(dt) - E_R(3 dt) = chsh_s_photon(dm * dt).
double chsh_s_meson(double dt, const PhysicsParams& params);

/// CHSH combination built from the damped correlation at (dt, 3dt) with a
/// common earlier decay time t'.  |value| stays <= 2 for dm*tau < 1.
inline double chsh_s_damped(double t_min, double dt,
                            const PhysicsParams& params) {
  const double e1 = correlation_damped({t_min, t_min + dt}, params);
  const double e3 = correlation_damped({t_min, t_min + 3.0 * dt}, params);
  return 3.0 * e1 - e3;
}

}  // namespace bellmc
