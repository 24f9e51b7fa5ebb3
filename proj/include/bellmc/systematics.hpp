#pragma once

#include <string>
#include <vector>

#include "bellmc/analysis.hpp"
#include "bellmc/config.hpp"
#include "bellmc/event.hpp"

namespace bellmc {

/// Names of the built-in systematic variations, in budget order:
///   fake_dstar_norm, uncorrelated_dsl_norm  - subtraction yield +-2 sigma
///   window_center, window_halfwidth, window3_halfwidth - +-20% cut variation
///   sideband_scale, control_scale           - +-20% normalization
///   mistag_omega                            - +-20% on both mistag rates
std::vector<std::string> systematic_variation_names();

struct SystematicsScan {
  double s_baseline = 0.0;
  SystematicsBudget budget;
};

/// Reruns the full pipeline on the same events once per variation direction
/// and records the larger |S_varied - S_baseline| per source; total combines
/// in quadrature.  The variation set comes from config.analysis.systematics
/// ("all", "none", or a comma-separated subset).  A variation that fails the
/// pipeline aborts the scan with the variation named.
SystematicsScan scan_systematics(const std::vector<EventRecord>& events,
                                 const RunConfig& config);

}  // namespace bellmc
