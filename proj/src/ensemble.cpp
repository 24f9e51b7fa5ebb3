#include "bellmc/ensemble.hpp"

#include <cmath>
#include <thread>

#include "bellmc/detector.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/pipeline.hpp"
#include "bellmc/rng.hpp"

namespace bellmc {

double expected_s_window(const RunConfig& config) {
  const AnalysisSettings& an = config.analysis;
  const double c = an.window_center_ps;
  const double hw = an.window_halfwidth_ps;
  const double hw3 = an.effective_window3_halfwidth();

  // Subtraction removes the fake-D* and uncorrelated components in
  // expectation, leaving the oscillating categories plus charged B.
  const double f_osc = config.frac_signal + config.frac_dss_mixing;
  const double f_const = config.frac_bpm_background;
  const double f_kept = f_osc + f_const;
  const double dilution =
      an.dilution_correction ? 1.0 : config.detector.dilution();

  auto expected_er = [&](double lo, double hi) {
    const double cos_avg = expected_er_signal_window(lo, hi, config.physics);
    return dilution * (f_osc * cos_avg + f_const) / f_kept;
  };
  const double e1 = expected_er(c - hw, c + hw);
  const double e3 = expected_er(3.0 * c - hw3, 3.0 * c + hw3);
  return 3.0 * e1 - e3;
}

namespace {

ExperimentResult run_one_experiment(const RunConfig& config,
                                    std::uint64_t index) {
  // Per-experiment seed from the dedicated stream domain.
  RandomStream seed_stream(config.seed, index, stream_domain::kEnsemble);
  const std::uint64_t exp_seed = seed_stream.next_u64();

  GeneratorConfig gen = config.generator_config();
  gen.seed = exp_seed;
  std::vector<EventRecord> events = generate_dataset(gen);
  events = apply_detector(events, config.detector, exp_seed);
  assign_samples(events, config.detector, exp_seed);

  const AnalysisOutput out = run_analysis(events, config);
  ExperimentResult res;
  res.s_value = out.result.s_value;
  res.sigma_stat = out.result.sigma_stat;
  res.significance = out.significance_value;
  return res;
}

}  // namespace

EnsembleSummary run_ensemble(const RunConfig& config,
                             std::uint64_t n_experiments, int n_threads) {
  config.validate();
  EnsembleSummary summary;
  summary.n_experiments = n_experiments;
  summary.significance_threshold = config.analysis.significance_threshold;
  if (n_experiments == 0) return summary;
  summary.s_analytic = expected_s_window(config);

  summary.experiments.resize(n_experiments);
  if (n_threads < 1) n_threads = 1;
  if (static_cast<std::uint64_t>(n_threads) > n_experiments)
    n_threads = static_cast<int>(n_experiments);

  auto worker = [&](int tid) {
    for (std::uint64_t j = tid; j < n_experiments; j += n_threads)
      summary.experiments[j] = run_one_experiment(config, j);
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  double s_sum = 0.0, s_sum2 = 0.0, sig_sum = 0.0;
  double pull_sum = 0.0, pull_sum2 = 0.0;
  std::uint64_t n_significant = 0;
  for (const ExperimentResult& r : summary.experiments) {
    s_sum += r.s_value;
    s_sum2 += r.s_value * r.s_value;
    sig_sum += r.sigma_stat;
    const double pull =
        r.sigma_stat > 0.0 ? (r.s_value - summary.s_analytic) / r.sigma_stat
                           : 0.0;
    pull_sum += pull;
    pull_sum2 += pull * pull;
    if (r.significance >= summary.significance_threshold) ++n_significant;
  }
  const double n = static_cast<double>(n_experiments);
  summary.s_mean = s_sum / n;
  summary.s_stddev =
      n > 1 ? std::sqrt(std::max(0.0, (s_sum2 - n * summary.s_mean *
                                                    summary.s_mean) /
                                          (n - 1.0)))
            : 0.0;
  summary.sigma_stat_mean = sig_sum / n;
  summary.pull_mean = pull_sum / n;
  summary.pull_stddev =
      n > 1 ? std::sqrt(std::max(0.0, (pull_sum2 - n * summary.pull_mean *
                                                       summary.pull_mean) /
                                          (n - 1.0)))
            : 0.0;
  summary.frac_significant = static_cast<double>(n_significant) / n;
  return summary;
}

}  // namespace bellmc
