#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellmc/lhv.hpp"
#include "bellmc/physics.hpp"

namespace bellmc {

/// Windowed CHSH estimate for one tested dt.
struct LhvScanPoint {
  double dt = 0.0;      // ps
  double s = 0.0;       // 3 E_R(dt) - E_R(3dt), OF-SF sign convention
  double sigma = 0.0;   // statistical error
};

/// Default tested dt grid [ps] used by the lhv-test command.
std::vector<double> default_lhv_dt_points();

/// Generates n_events under the strategy and estimates S at each dt with
/// windows (dt +- halfwidth) and (3dt +- 3*halfwidth).
std::vector<LhvScanPoint> lhv_chsh_scan(const LhvStrategy& strategy,
                                        const PhysicsParams& params,
                                        std::uint64_t n_events,
                                        std::uint64_t seed,
                                        const std::vector<double>& dt_points,
                                        double halfwidth = 0.1);

struct LhvStrategyReport {
  std::string name;
  std::vector<LhvScanPoint> points;
  LhvScanPoint max_point;  // point with the largest S
};

/// Runs the built-in strategies plus n_random randomized ones and reports
/// the S(dt) scans.  No strategy can exceed S = 2 beyond fluctuations.
std::vector<LhvStrategyReport> run_lhv_tests(const PhysicsParams& params,
                                             std::uint64_t n_events,
                                             std::uint64_t seed,
                                             int n_random);

}  // namespace bellmc
