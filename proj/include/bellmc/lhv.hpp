#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bellmc/rng.hpp"

namespace bellmc {

/// A local-hidden-variable strategy: a distribution rho(lambda) plus one
/// deterministic outcome function per side.  Locality is structural: each
/// outcome sees only its own decay time and the shared lambda, never the
/// other side's time.
struct LhvStrategy {
  std::string name;
  std::function<double(RandomStream&)> hidden_sampler;
  std::function<int(double t, double lambda)> outcome_a;  // -> +1/-1
  std::function<int(double t, double lambda)> outcome_b;  // -> +1/-1
};

/// lambda in {+1,-1} equiprobable; side a reports lambda, side b reports
/// -lambda.  Every pair is opposite-flavor at any times.
LhvStrategy make_static_flavor_strategy();

/// lambda = phase uniform on [0, 2pi); outcomes are square waves
/// sgn cos(dm t + phase) with side b inverted.  Its renormalized correlation
/// is the triangle wave, which saturates S = 2 for dm*dt <= pi/3.
LhvStrategy make_local_oscillation_strategy(double delta_m);

/// Randomized strategy: each side is the sign of a random 3-harmonic Fourier
/// series in a base frequency shared by both sides; lambda is a common time
/// shift uniform over the period.  Joint stationarity keeps the binned CHSH
/// combination within the classical bound.
LhvStrategy make_random_sign_strategy(std::uint64_t strategy_seed);

/// The two built-ins, in a fixed order.
std::vector<LhvStrategy> builtin_strategies(double delta_m);

}  // namespace bellmc
