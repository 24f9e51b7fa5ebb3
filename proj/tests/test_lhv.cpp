#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellmc/analysis.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/lhv_harness.hpp"
#include "oracles.hpp"

using namespace bellmc;

namespace {
const PhysicsParams kBelle{1.542, 0.507, 0.425};

// Square-wave correlation oracle: two square waves with a common uniform
// phase have correlation tri(delta) = 1 - 2 delta/pi on [0, pi], periodic
// and even.  In the OF-SF sign convention the b-side inversion makes the
// measured E_R equal +tri(dm dt).
double triangle(double delta) {
  delta = std::fabs(delta);
  const double two_pi = 2.0 * std::numbers::pi;
  delta -= two_pi * std::floor(delta / two_pi);
  if (delta > std::numbers::pi) delta = two_pi - delta;
  return 1.0 - 2.0 * delta / std::numbers::pi;
}
}  // namespace

TEST_CASE("static strategy: every pair opposite-flavor, E_R = +1") {
  const auto strat = make_static_flavor_strategy();
  const auto events = generate_lhv_dataset(strat, kBelle, 20000, 5);
  double product_sum = 0.0;
  for (const auto& ev : events) {
    CHECK(ev.flavor_a == -ev.flavor_b);
    product_sum += ev.flavor_a * ev.flavor_b;
  }
  // Outcome-product convention gives -1; the OF-SF estimator gives +1.
  CHECK(product_sum / events.size() == doctest::Approx(-1.0));
  const BinnedCounts counts = bin_events(events, {0.0, 2.0, 4.0, 8.0});
  for (int i = 0; i < counts.n_bins(); ++i) {
    const auto est = estimate_er(counts.tally(Sample::kSignalRegion, i),
                                 counts.bin_center(i), counts.bin_halfwidth(i));
    if (!est.defined()) continue;
    CHECK(est.e_r == doctest::Approx(1.0));
  }
  // S = 3 * 1 - 1 = 2 exactly: saturates, never violates.
  const auto points = lhv_chsh_scan(strat, kBelle, 50000, 6, {1.0, 2.0});
  for (const auto& p : points) CHECK(p.s == doctest::Approx(2.0));
}

TEST_CASE("local-oscillation strategy follows the triangle correlation") {
  const auto strat = make_local_oscillation_strategy(kBelle.delta_m);
  const auto events = generate_lhv_dataset(strat, kBelle, 500000, 21);
  std::vector<double> edges;
  for (double e = 0.0; e <= 8.0001; e += 0.25) edges.push_back(e);
  const BinnedCounts counts = bin_events(events, edges);
  int checked = 0;
  for (int i = 0; i < counts.n_bins(); ++i) {
    const auto est = estimate_er(counts.tally(Sample::kSignalRegion, i),
                                 counts.bin_center(i), counts.bin_halfwidth(i));
    if (!est.defined() || est.n_effective < 500) continue;
    // Oracle: triangle averaged over the bin with the exponential density.
    const double tau = kBelle.tau_b;
    const double num = oracles::integrate(
        [&](double t) {
          return std::exp(-t / tau) * triangle(kBelle.delta_m * t);
        },
        counts.bin_lo(i), counts.bin_hi(i));
    const double den = oracles::integrate(
        [&](double t) { return std::exp(-t / tau); }, counts.bin_lo(i),
        counts.bin_hi(i));
    CHECK(std::fabs(est.e_r - num / den) < 5.0 * est.sigma_stat);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("local-oscillation saturates S = 2 for dm dt <= pi/3") {
  const auto strat = make_local_oscillation_strategy(kBelle.delta_m);
  const std::vector<double> dts = {0.4, 0.8, 1.2, 1.6, 2.0};
  const auto points = lhv_chsh_scan(strat, kBelle, 1000000, 33, dts);
  for (const auto& p : points) {
    CHECK(kBelle.delta_m * p.dt <= std::numbers::pi / 3.0 + 1e-9);
    CHECK(std::fabs(p.s - 2.0) < 3.0 * p.sigma);
  }
}

TEST_CASE("no strategy exceeds the classical bound (5 sigma)") {
  std::vector<LhvStrategy> strategies = builtin_strategies(kBelle.delta_m);
  for (int i = 0; i < 6; ++i)
    strategies.push_back(make_random_sign_strategy(900 + i));
  std::uint64_t seed = 50;
  for (const auto& strat : strategies) {
    const auto points = lhv_chsh_scan(strat, kBelle, 200000, seed++,
                                      default_lhv_dt_points());
    for (const auto& p : points)
      CHECK_MESSAGE(p.s <= 2.0 + 5.0 * p.sigma, strat.name, " at dt=", p.dt);
  }
}

TEST_CASE("random strategies produce valid outcomes and vary") {
  RandomStream rng(77, 0);
  int differing = 0;
  for (int i = 0; i < 10; ++i) {
    const auto strat = make_random_sign_strategy(1234 + i);
    const double lambda = strat.hidden_sampler(rng);
    bool saw_plus = false, saw_minus = false;
    for (double t = 0.0; t < 20.0; t += 0.1) {
      const int out = strat.outcome_a(t, lambda);
      CHECK(std::abs(out) == 1);
      saw_plus = saw_plus || out == 1;
      saw_minus = saw_minus || out == -1;
    }
    if (saw_plus && saw_minus) ++differing;
  }
  // Nearly all random waveforms should actually oscillate.
  CHECK(differing >= 7);
}

TEST_CASE("run_lhv_tests reports the built-ins plus randomized strategies") {
  const auto reports = run_lhv_tests(kBelle, 20000, 7, 3);
  REQUIRE(reports.size() == 5);
  CHECK(reports[0].name == "static_flavor");
  CHECK(reports[1].name == "local_oscillation");
  for (const auto& rep : reports) {
    CHECK(rep.points.size() == default_lhv_dt_points().size());
    CHECK(rep.max_point.s <= 2.0 + 5.0 * rep.max_point.sigma);
  }
}
