#include "bellmc/lhv.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace bellmc {

namespace {

inline int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

// Deterministic +-1 waveform: sign of a 3-harmonic series in omega0*t.
struct HarmonicSign {
  double omega0;
  std::array<double, 3> cos_amp;
  std::array<double, 3> sin_amp;
  double bias;

  int operator()(double t) const {
    double v = bias;
    for (int k = 0; k < 3; ++k) {
      const double arg = (k + 1) * omega0 * t;
      v += cos_amp[k] * std::cos(arg) + sin_amp[k] * std::sin(arg);
    }
    return sign_of(v);
  }
};

}  // namespace

LhvStrategy make_static_flavor_strategy() {
  LhvStrategy s;
  s.name = "static_flavor";
  s.hidden_sampler = [](RandomStream& rng) {
    return rng.bernoulli(0.5) ? 1.0 : -1.0;
  };
  s.outcome_a = [](double, double lambda) { return sign_of(lambda); };
  s.outcome_b = [](double, double lambda) { return -sign_of(lambda); };
  return s;
}

LhvStrategy make_local_oscillation_strategy(double delta_m) {
  LhvStrategy s;
  s.name = "local_oscillation";
  s.hidden_sampler = [](RandomStream& rng) {
    return rng.uniform_range(0.0, 2.0 * std::numbers::pi);
  };
  s.outcome_a = [delta_m](double t, double lambda) {
    return sign_of(std::cos(delta_m * t + lambda));
  };
  s.outcome_b = [delta_m](double t, double lambda) {
    return -sign_of(std::cos(delta_m * t + lambda));
  };
  return s;
}

LhvStrategy make_random_sign_strategy(std::uint64_t strategy_seed) {
  RandomStream rng(strategy_seed, 0xc0ffee);
  const double omega0 = rng.uniform_range(0.2, 1.5);  // rad/ps
  auto draw_wave = [&](void) {
    HarmonicSign w;
    w.omega0 = omega0;
    for (int k = 0; k < 3; ++k) {
      w.cos_amp[k] = rng.gaussian();
      w.sin_amp[k] = rng.gaussian();
    }
    w.bias = rng.gaussian(0.0, 0.5);
    return w;
  };
  const HarmonicSign wave_a = draw_wave();
  const HarmonicSign wave_b = draw_wave();
  const int sign_b = rng.bernoulli(0.5) ? +1 : -1;
  const double period = 2.0 * std::numbers::pi / omega0;

  LhvStrategy s;
  s.name = "random_sign_" + std::to_string(strategy_seed);
  s.hidden_sampler = [period](RandomStream& r) {
    return r.uniform_range(0.0, period);
  };
  s.outcome_a = [wave_a](double t, double lambda) { return wave_a(t + lambda); };
  s.outcome_b = [wave_b, sign_b](double t, double lambda) {
    return sign_b * wave_b(t + lambda);
  };
  return s;
}

std::vector<LhvStrategy> builtin_strategies(double delta_m) {
  return {make_static_flavor_strategy(),
          make_local_oscillation_strategy(delta_m)};
}

}  // namespace bellmc
