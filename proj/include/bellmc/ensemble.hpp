#pragma once

#include <cstdint>
#include <vector>

#include "bellmc/config.hpp"

namespace bellmc {

struct ExperimentResult {
  double s_value = 0.0;
  double sigma_stat = 0.0;
  double significance = 0.0;
};

struct EnsembleSummary {
  std::uint64_t n_experiments = 0;
  double s_analytic = 0.0;  // large-sample estimator target, ideal resolution
  double s_mean = 0.0;
  double s_stddev = 0.0;
  double sigma_stat_mean = 0.0;
  double pull_mean = 0.0;    // pull = (S - s_analytic) / sigma_stat
  double pull_stddev = 0.0;
  double significance_threshold = 3.0;
  double frac_significant = 0.0;
  std::vector<ExperimentResult> experiments;
};

/// Large-sample value the windowed estimator converges to for this config
/// with ideal vertex resolution: exponentially-weighted window averages of
/// the post-subtraction category mixture (oscillating categories -> cos,
/// charged-B -> +1), including dilution unless the correction is enabled.
double expected_s_window(const RunConfig& config);

/// Runs n_experiments independent pseudo-experiments.  Experiment j derives
/// its seeds from (config.seed, j), so the summary does not depend on the
/// number of worker threads.
EnsembleSummary run_ensemble(const RunConfig& config,
                             std::uint64_t n_experiments, int n_threads = 1);

}  // namespace bellmc
