#pragma once

#include <vector>

#include "bellmc/analysis.hpp"
#include "bellmc/config.hpp"
#include "bellmc/event.hpp"

namespace bellmc {

/// Everything the analyze step produces from one event sample.
struct AnalysisOutput {
  ChshResult result;
  double significance_value = 0.0;
  CorrelationEstimate e_at_dt;
  CorrelationEstimate e_at_3dt;
  std::vector<CorrelationEstimate> bins;  // fine-binned E_R after subtraction
  bool any_clamped = false;
};

/// Full measurement chain on an event sample: fine binning, background
/// subtraction, per-bin E_R, windowed E_R at (dt, 3dt), optional dilution
/// correction, S with statistical error, significance with the configured
/// sigma_syst.
AnalysisOutput run_analysis(const std::vector<EventRecord>& events,
                            const RunConfig& config);

/// run_analysis with explicit overrides used by the systematics scan.
struct AnalysisOverrides {
  double window_center_ps = -1.0;      // <0 keeps config value
  double window_halfwidth_ps = -1.0;   // <0 keeps config value
  double window3_halfwidth_ps = -1.0;  // <0 keeps config value
  double sideband_scale = -1.0;        // <0 keeps config value
  double control_scale = -1.0;         // <0 keeps config value
  double omega_a = -1.0;               // <0 keeps config value
  double omega_b = -1.0;               // <0 keeps config value
  double extra_sideband_factor = 1.0;  // scales the subtraction term
  double extra_control_factor = 1.0;
};

AnalysisOutput run_analysis(const std::vector<EventRecord>& events,
                            const RunConfig& config,
                            const AnalysisOverrides& overrides);

}  // namespace bellmc
