#include "bellmc/pipeline.hpp"

#include <stdexcept>

namespace bellmc {

AnalysisOutput run_analysis(const std::vector<EventRecord>& events,
                            const RunConfig& config) {
  return run_analysis(events, config, AnalysisOverrides{});
}

AnalysisOutput run_analysis(const std::vector<EventRecord>& events,
                            const RunConfig& config,
                            const AnalysisOverrides& overrides) {
  config.validate();
  DetectorParams det = config.detector;
  if (overrides.sideband_scale > 0.0)
    det.sideband_scale = overrides.sideband_scale;
  if (overrides.control_scale > 0.0)
    det.control_scale = overrides.control_scale;
  double omega_a = det.omega_a;
  double omega_b = det.omega_b;
  if (overrides.omega_a >= 0.0) omega_a = overrides.omega_a;
  if (overrides.omega_b >= 0.0) omega_b = overrides.omega_b;

  const AnalysisSettings& an = config.analysis;
  const double center =
      overrides.window_center_ps > 0.0 ? overrides.window_center_ps
                                       : an.window_center_ps;
  const double hw = overrides.window_halfwidth_ps > 0.0
                        ? overrides.window_halfwidth_ps
                        : an.window_halfwidth_ps;
  const double hw3 = overrides.window3_halfwidth_ps > 0.0
                         ? overrides.window3_halfwidth_ps
                         : an.effective_window3_halfwidth();

  AnalysisOutput out;

  // Fine-binned E_R for figures and model comparison.
  {
    const BinnedCounts raw = bin_events(events, an.bin_edges());
    const BinnedCounts sub =
        subtract_backgrounds(raw, det, overrides.extra_sideband_factor,
                             overrides.extra_control_factor);
    out.any_clamped = !sub.clamped_bins().empty();
    for (int i = 0; i < sub.n_bins(); ++i) {
      CorrelationEstimate est =
          estimate_er(sub.tally(Sample::kSignalRegion, i), sub.bin_center(i),
                      sub.bin_halfwidth(i));
      if (an.dilution_correction && est.defined())
        est = correct_dilution(est, omega_a, omega_b);
      out.bins.push_back(est);
    }
  }

  // Windowed estimates at dt and 3dt.
  auto window_estimate = [&](double lo, double hi) {
    const std::vector<double> edges = {lo, hi};
    const BinnedCounts raw = bin_events(events, edges);
    const BinnedCounts sub =
        subtract_backgrounds(raw, det, overrides.extra_sideband_factor,
                             overrides.extra_control_factor);
    out.any_clamped = out.any_clamped || !sub.clamped_bins().empty();
    CorrelationEstimate est = estimate_er(sub.tally(Sample::kSignalRegion, 0),
                                          0.5 * (lo + hi), 0.5 * (hi - lo));
    if (!sub.clamped_bins().empty()) est.flags |= estimate_flags::kClamped;
    if (an.dilution_correction && est.defined())
      est = correct_dilution(est, omega_a, omega_b);
    return est;
  };
  out.e_at_dt = window_estimate(center - hw, center + hw);
  out.e_at_3dt = window_estimate(3.0 * center - hw3, 3.0 * center + hw3);

  out.result = compute_s(out.e_at_dt, out.e_at_3dt);
  out.result.sigma_syst = an.sigma_syst;
  out.significance_value = significance(out.result);
  return out;
}

}  // namespace bellmc
