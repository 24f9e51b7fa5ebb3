#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellmc/analysis.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/rng.hpp"
#include "oracles.hpp"

using namespace bellmc;

namespace {
const PhysicsParams kBelle{1.542, 0.507, 0.425};

EventRecord event_at(double dt, bool same_flavor, Sample sample,
                     double weight = 1.0) {
  EventRecord ev;
  ev.t_a = dt;
  ev.t_b = 0.0;
  ev.dt_true = dt;
  ev.dt_reco = dt;
  ev.flavor_a = +1;
  ev.flavor_b = same_flavor ? +1 : -1;
  ev.tag_a = ev.flavor_a;
  ev.tag_b = ev.flavor_b;
  ev.sample = sample;
  ev.weight = weight;
  return ev;
}
}  // namespace

TEST_CASE("bin_events basics") {
  CHECK_THROWS_AS(bin_events({}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bin_events({}, std::vector<double>{1.0, 0.5}),
                  std::invalid_argument);

  const BinnedCounts empty = bin_events({}, {0.0, 1.0, 2.0});
  for (int i = 0; i < empty.n_bins(); ++i)
    CHECK(empty.tally(Sample::kSignalRegion, i).total() == 0.0);

  std::vector<EventRecord> events;
  for (int i = 0; i < 100; ++i)
    events.push_back(event_at(2.0, false, Sample::kSignalRegion));
  const BinnedCounts counts = bin_events(events, {1.5, 2.5});
  CHECK(counts.tally(Sample::kSignalRegion, 0).of == 100.0);
  CHECK(counts.tally(Sample::kSignalRegion, 0).sf == 0.0);
}

TEST_CASE("bin_events conserves selected events") {
  GeneratorConfig cfg;
  cfg.n_events = 100000;
  cfg.seed = 17;
  cfg.params = kBelle;
  const auto events = generate_dataset(cfg);
  std::vector<double> edges;
  for (double e = 0.0; e <= 12.0001; e += 0.2) edges.push_back(e);
  const BinnedCounts counts = bin_events(events, edges);
  double binned = 0.0;
  for (int i = 0; i < counts.n_bins(); ++i)
    binned += counts.tally(Sample::kSignalRegion, i).total();
  double selected = 0.0;
  for (const auto& ev : events)
    if (ev.dt_reco >= edges.front() && ev.dt_reco < edges.back())
      selected += 1.0;
  CHECK(binned == selected);
}

TEST_CASE("window argument restricts tallies") {
  std::vector<EventRecord> events;
  events.push_back(event_at(0.5, false, Sample::kSignalRegion));
  events.push_back(event_at(1.5, false, Sample::kSignalRegion));
  const BinnedCounts counts = bin_events(events, {0.0, 1.0, 2.0}, 1.0, 2.0);
  CHECK(counts.tally(Sample::kSignalRegion, 0).total() == 0.0);
  CHECK(counts.tally(Sample::kSignalRegion, 1).total() == 1.0);
}

TEST_CASE("subtract_backgrounds") {
  DetectorParams det;

  SUBCASE("zero control counts leave counts unchanged") {
    std::vector<EventRecord> events;
    for (int i = 0; i < 50; ++i)
      events.push_back(event_at(2.0, false, Sample::kSignalRegion));
    const BinnedCounts counts = bin_events(events, {1.5, 2.5});
    const BinnedCounts sub = subtract_backgrounds(counts, det);
    CHECK(sub.tally(Sample::kSignalRegion, 0).of == 50.0);
    CHECK(sub.clamped_bins().empty());
  }

  SUBCASE("direct sideband subtraction") {
    std::vector<EventRecord> events;
    for (int i = 0; i < 110; ++i)
      events.push_back(event_at(2.0, false, Sample::kSignalRegion));
    for (int i = 0; i < 10; ++i)
      events.push_back(event_at(2.0, false, Sample::kSideband));
    const BinnedCounts counts = bin_events(events, {1.5, 2.5});
    const BinnedCounts sub = subtract_backgrounds(counts, det);
    CHECK(sub.tally(Sample::kSignalRegion, 0).of == doctest::Approx(100.0));
    // Variance adds: 110 + 10.
    CHECK(sub.tally(Sample::kSignalRegion, 0).of_w2 ==
          doctest::Approx(120.0));
  }

  SUBCASE("sideband scale divides the subtraction") {
    std::vector<EventRecord> events;
    for (int i = 0; i < 100; ++i)
      events.push_back(event_at(2.0, true, Sample::kSignalRegion));
    for (int i = 0; i < 40; ++i)
      events.push_back(event_at(2.0, true, Sample::kSideband));
    det.sideband_scale = 2.0;  // sideband collects twice the signal-region fakes
    const BinnedCounts sub =
        subtract_backgrounds(bin_events(events, {1.5, 2.5}), det);
    CHECK(sub.tally(Sample::kSignalRegion, 0).sf == doctest::Approx(80.0));
  }

  SUBCASE("negative results clamp to zero with a flag") {
    std::vector<EventRecord> events;
    for (int i = 0; i < 5; ++i)
      events.push_back(event_at(2.0, false, Sample::kSignalRegion));
    for (int i = 0; i < 20; ++i)
      events.push_back(event_at(2.0, false, Sample::kSideband));
    const BinnedCounts sub =
        subtract_backgrounds(bin_events(events, {1.5, 2.5}), det);
    CHECK(sub.tally(Sample::kSignalRegion, 0).of == 0.0);
    REQUIRE(sub.clamped_bins().size() == 1);
    CHECK(sub.clamped_bins()[0] == 0);
  }
}

TEST_CASE("subtraction closure against a background-free run") {
  // Generate with uncorrelated backgrounds on, subtract, and compare E_R to
  // the same signal fraction alone.  The signal substream is shared because
  // category and kinematics come from the same per-event stream.
  GeneratorConfig cfg;
  cfg.n_events = 400000;
  cfg.seed = 71;
  cfg.params = kBelle;
  cfg.set_fraction(Category::kSignal, 0.80);
  cfg.set_fraction(Category::kFakeDstar, 0.10);
  cfg.set_fraction(Category::kUncorrelatedDsl, 0.10);
  auto events = generate_dataset(cfg);
  DetectorParams det;
  det.dz_sigma_um = 0.0;
  assign_samples(events, det, 71);

  std::vector<double> edges;
  for (double e = 0.0; e <= 6.0001; e += 0.5) edges.push_back(e);
  const BinnedCounts sub = subtract_backgrounds(bin_events(events, edges), det);

  std::vector<EventRecord> pure;
  for (const auto& ev : events)
    if (ev.category == Category::kSignal) pure.push_back(ev);
  const BinnedCounts ref = bin_events(pure, edges);

  for (int i = 0; i < sub.n_bins(); ++i) {
    const auto est_sub = estimate_er(sub.tally(Sample::kSignalRegion, i),
                                     sub.bin_center(i), sub.bin_halfwidth(i));
    const auto est_ref = estimate_er(ref.tally(Sample::kSignalRegion, i),
                                     ref.bin_center(i), ref.bin_halfwidth(i));
    if (!est_sub.defined() || !est_ref.defined()) continue;
    if (est_ref.n_effective < 200) continue;
    const double sigma = std::sqrt(est_sub.sigma_stat * est_sub.sigma_stat +
                                   est_ref.sigma_stat * est_ref.sigma_stat);
    CHECK(std::fabs(est_sub.e_r - est_ref.e_r) < 5.0 * sigma);
  }
}

TEST_CASE("estimate_er examples") {
  FlavorTally t;
  t.sf = 50.0;
  t.of = 50.0;
  t.sf_w2 = 50.0;
  t.of_w2 = 50.0;
  CHECK(estimate_er(t, 1.0, 0.5).e_r == doctest::Approx(0.0));

  t = FlavorTally{25.0, 75.0, 25.0, 75.0};
  const auto est = estimate_er(t, 1.0, 0.5);
  CHECK(est.e_r == doctest::Approx(0.5));
  CHECK(est.sigma_stat == doctest::Approx(0.08660254037844387).epsilon(1e-9));
  CHECK(est.n_effective == doctest::Approx(100.0));

  // Degenerate bin: boundary estimate, sigma floor 1/N, flag raised.
  t = FlavorTally{0.0, 50.0, 0.0, 50.0};
  const auto deg = estimate_er(t, 1.0, 0.5);
  CHECK(deg.e_r == doctest::Approx(1.0));
  CHECK(deg.sigma_stat == doctest::Approx(1.0 / 50.0));
  CHECK((deg.flags & estimate_flags::kDegenerate) != 0);

  const auto undef = estimate_er(FlavorTally{}, 1.0, 0.5);
  CHECK_FALSE(undef.defined());
}

TEST_CASE("error formula equivalence: sqrt((1-E^2)/N) == 2 sqrt(SF*OF/N^3)") {
  RandomStream rng(3, 1);
  for (int i = 0; i < 2000; ++i) {
    const double sf = 1.0 + std::floor(rng.uniform() * 1000.0);
    const double of = 1.0 + std::floor(rng.uniform() * 1000.0);
    FlavorTally t{sf, of, sf, of};
    const auto est = estimate_er(t, 1.0, 0.5);
    const double n = sf + of;
    const double alt = 2.0 * std::sqrt(sf * of / (n * n * n));
    CHECK(est.sigma_stat == doctest::Approx(alt).epsilon(1e-12));
  }
}

TEST_CASE("estimator converges to the generating probability") {
  // Counts drawn with exact p_of = (1 + cos(dm dt))/2; bias < sigma/3 at
  // N = 1e6 per bin.
  RandomStream rng(9, 4);
  for (double dt : {0.5, 2.0, 4.0}) {
    const double p_of = 0.5 * (1.0 + std::cos(kBelle.delta_m * dt));
    const int n = 1000000;
    double of = 0.0;
    for (int i = 0; i < n; ++i) of += rng.bernoulli(p_of) ? 1.0 : 0.0;
    FlavorTally t{n - of, of, n - of, of};
    const auto est = estimate_er(t, dt, 0.1);
    const double truth = 2.0 * p_of - 1.0;
    CHECK(std::fabs(est.e_r - truth) < 5.0 * est.sigma_stat);
  }
}

TEST_CASE("estimator bias is below a third of its statistical error") {
  // The estimator is linear in the counts, so its bias is identically zero;
  // 64 replicates at N = 1e6 resolve a bias of sigma/3 with margin.
  const double dt = 2.0;
  const double p_of = 0.5 * (1.0 + std::cos(kBelle.delta_m * dt));
  const double truth = 2.0 * p_of - 1.0;
  const int n = 1000000;
  const int replicates = 64;
  double mean_dev = 0.0;
  double sigma_single = 0.0;
  for (int r = 0; r < replicates; ++r) {
    RandomStream rng(555, r);
    double of = 0.0;
    for (int i = 0; i < n; ++i) of += rng.bernoulli(p_of) ? 1.0 : 0.0;
    FlavorTally t{n - of, of, n - of, of};
    const auto est = estimate_er(t, dt, 0.1);
    mean_dev += est.e_r - truth;
    sigma_single = est.sigma_stat;
  }
  mean_dev /= replicates;
  CHECK(std::fabs(mean_dev) < sigma_single / 3.0);
}

TEST_CASE("bootstrap sigma agrees with the analytic formula within 10%") {
  const int n = 10000;
  const double p_of = 0.75;
  RandomStream rng(31, 2);
  int of_count = 0;
  for (int i = 0; i < n; ++i) of_count += rng.bernoulli(p_of) ? 1 : 0;
  FlavorTally t{static_cast<double>(n - of_count),
                static_cast<double>(of_count),
                static_cast<double>(n - of_count),
                static_cast<double>(of_count)};
  const auto est = estimate_er(t, 1.0, 0.5);

  // Multinomial bootstrap of the (SF, OF) split.
  const double p_hat = t.of / n;
  std::vector<double> resampled;
  for (int b = 0; b < 1000; ++b) {
    int of_b = 0;
    for (int i = 0; i < n; ++i) of_b += rng.bernoulli(p_hat) ? 1 : 0;
    resampled.push_back(2.0 * of_b / static_cast<double>(n) - 1.0);
  }
  const double sigma_boot = oracles::stddev(resampled);
  CHECK(std::fabs(sigma_boot - est.sigma_stat) < 0.10 * est.sigma_stat);
}

TEST_CASE("correct_dilution scales estimate and error") {
  FlavorTally t{250.0, 750.0, 250.0, 750.0};
  const auto raw = estimate_er(t, 1.0, 0.5);
  const auto corr = correct_dilution(raw, 0.05, 0.05);
  CHECK(corr.e_r == doctest::Approx(raw.e_r / 0.81));
  CHECK(corr.sigma_stat == doctest::Approx(raw.sigma_stat / 0.81));
  CHECK((corr.flags & estimate_flags::kDilutionCorrected) != 0);
  CHECK_THROWS_AS(correct_dilution(raw, 0.6, 0.0), std::invalid_argument);
}

TEST_CASE("compute_s") {
  SUBCASE("perfect correlations give s = 2 with zero error") {
    CorrelationEstimate e1{2.0, 0.5, 1.0, 0.0, 100.0, 0};
    CorrelationEstimate e3{6.0, 1.5, 1.0, 0.0, 100.0, 0};
    const ChshResult r = compute_s(e1, e3);
    CHECK(r.s_value == doctest::Approx(2.0));
    CHECK(r.sigma_stat == doctest::Approx(0.0));
  }

  SUBCASE("worked numeric example") {
    CorrelationEstimate e1{2.0, 0.5, 0.5276, 0.0, 100.0, 0};
    CorrelationEstimate e3{6.0, 1.5, -0.9950, 0.0, 100.0, 0};
    CHECK(compute_s(e1, e3).s_value == doctest::Approx(2.5778).epsilon(1e-9));
  }

  SUBCASE("error combination") {
    CorrelationEstimate e1{2.0, 0.5, 0.5, 0.03, 100.0, 0};
    CorrelationEstimate e3{6.0, 1.5, -0.9, 0.04, 100.0, 0};
    CHECK(compute_s(e1, e3).sigma_stat ==
          doctest::Approx(std::sqrt(9.0 * 0.0009 + 0.0016)));
  }

  SUBCASE("overlapping windows are rejected") {
    CorrelationEstimate e1{2.0, 1.0, 0.5, 0.03, 100.0, 0};
    CorrelationEstimate e3{3.5, 1.0, -0.9, 0.04, 100.0, 0};
    CHECK_THROWS_AS(compute_s(e1, e3), std::invalid_argument);
  }

  SUBCASE("undefined estimates are rejected") {
    CorrelationEstimate e1{2.0, 0.5, 0.0, 0.0, 0.0,
                           estimate_flags::kUndefined};
    CorrelationEstimate e3{6.0, 1.5, -0.9, 0.04, 100.0, 0};
    CHECK_THROWS_AS(compute_s(e1, e3), std::invalid_argument);
  }
}

TEST_CASE("significance") {
  ChshResult r;
  r.s_value = 2.0;
  r.sigma_stat = 0.1;
  CHECK(significance(r) == doctest::Approx(0.0));

  r.s_value = 2.725;
  r.sigma_stat = 0.167;
  r.sigma_syst = 0.092;
  CHECK(significance(r) == doctest::Approx(3.8024882).epsilon(1e-4));

  r.s_value = 1.5;
  CHECK(significance(r) < 0.0);

  r.sigma_stat = 0.0;
  r.sigma_syst = 0.0;
  CHECK_THROWS_AS(significance(r), std::invalid_argument);
}

TEST_CASE("systematics budget quadrature") {
  SystematicsBudget b;
  CHECK(b.total() == doctest::Approx(0.0));

  // Shift table from the systematic-error summary; quadrature total 0.092.
  const std::vector<double> shifts = {0.005, 0.030, 0.060, 0.030,
                                      0.028, 0.023, 0.042};
  for (std::size_t i = 0; i < shifts.size(); ++i)
    b.add("source_" + std::to_string(i), shifts[i]);
  CHECK(b.total() == doctest::Approx(0.0922).epsilon(5e-3));
  CHECK(std::fabs(b.total() - 0.092) < 0.0005);

  SUBCASE("total is permutation invariant") {
    SystematicsBudget shuffled;
    for (auto it = shifts.rbegin(); it != shifts.rend(); ++it)
      shuffled.add("s", *it);
    CHECK(shuffled.total() == doctest::Approx(b.total()).epsilon(1e-12));
  }

  SUBCASE("splitting one source preserves the total") {
    SystematicsBudget split;
    for (std::size_t i = 0; i + 1 < shifts.size(); ++i)
      split.add("s", shifts[i]);
    const double last = shifts.back();
    const double part = last / std::sqrt(2.0);
    split.add("half_a", part);
    split.add("half_b", part);
    CHECK(split.total() == doctest::Approx(b.total()).epsilon(1e-12));
  }
}

TEST_CASE("expected_er_signal_window matches quadrature") {
  for (const auto& window : std::vector<std::pair<double, double>>{
           {1.5, 2.5}, {4.5, 7.5}, {0.0, 0.5}}) {
    const double num = oracles::integrate(
        [&](double t) {
          return std::exp(-t / kBelle.tau_b) *
                 std::cos(kBelle.delta_m * t);
        },
        window.first, window.second);
    const double den = oracles::integrate(
        [&](double t) { return std::exp(-t / kBelle.tau_b); }, window.first,
        window.second);
    CHECK(expected_er_signal_window(window.first, window.second, kBelle) ==
          doctest::Approx(num / den).epsilon(1e-7));
  }
}
