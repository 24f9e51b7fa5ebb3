#include "bellmc/lhv_harness.hpp"

#include <cmath>
#include <stdexcept>

#include "bellmc/analysis.hpp"
#include "bellmc/generator.hpp"

namespace bellmc {

std::vector<double> default_lhv_dt_points() {
  return {0.4, 0.8, 1.2, 1.6, 2.0, 2.5, 3.0, 4.0};
}

std::vector<LhvScanPoint> lhv_chsh_scan(const LhvStrategy& strategy,
                                        const PhysicsParams& params,
                                        std::uint64_t n_events,
                                        std::uint64_t seed,
                                        const std::vector<double>& dt_points,
                                        double halfwidth) {
  if (!(halfwidth > 0.0))
    throw std::invalid_argument("halfwidth must be > 0");
  const std::vector<EventRecord> events =
      generate_lhv_dataset(strategy, params, n_events, seed);

  std::vector<LhvScanPoint> points;
  points.reserve(dt_points.size());
  for (double dt : dt_points) {
    const double lo1 = dt - halfwidth;
    const double hi1 = dt + halfwidth;
    const double lo3 = 3.0 * (dt - halfwidth);
    const double hi3 = 3.0 * (dt + halfwidth);
    if (lo1 < 0.0 || hi1 > lo3)
      throw std::invalid_argument("dt point too small for the window width");

    FlavorTally t1, t3;
    for (const EventRecord& ev : events) {
      const double d = ev.dt_true;
      FlavorTally* t = nullptr;
      if (d >= lo1 && d < hi1)
        t = &t1;
      else if (d >= lo3 && d < hi3)
        t = &t3;
      else
        continue;
      if (ev.same_flavor_true()) {
        t->sf += 1.0;
        t->sf_w2 += 1.0;
      } else {
        t->of += 1.0;
        t->of_w2 += 1.0;
      }
    }
    const CorrelationEstimate e1 = estimate_er(t1, dt, halfwidth);
    const CorrelationEstimate e3 =
        estimate_er(t3, 3.0 * dt, 3.0 * halfwidth);
    LhvScanPoint p;
    p.dt = dt;
    if (e1.defined() && e3.defined()) {
      const ChshResult r = compute_s(e1, e3);
      p.s = r.s_value;
      p.sigma = r.sigma_stat;
    } else {
      p.s = 0.0;
      p.sigma = 0.0;
    }
    points.push_back(p);
  }
  return points;
}

std::vector<LhvStrategyReport> run_lhv_tests(const PhysicsParams& params,
                                             std::uint64_t n_events,
                                             std::uint64_t seed,
                                             int n_random) {
  std::vector<LhvStrategy> strategies = builtin_strategies(params.delta_m);
  for (int i = 0; i < n_random; ++i)
    strategies.push_back(make_random_sign_strategy(seed + 1000 + i));

  std::vector<LhvStrategyReport> reports;
  std::uint64_t stream_seed = seed;
  for (const LhvStrategy& strat : strategies) {
    LhvStrategyReport rep;
    rep.name = strat.name;
    rep.points = lhv_chsh_scan(strat, params, n_events, stream_seed++,
                               default_lhv_dt_points());
    rep.max_point = rep.points.front();
    for (const auto& p : rep.points)
      if (p.s > rep.max_point.s) rep.max_point = p;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace bellmc
