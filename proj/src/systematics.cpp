#include "bellmc/systematics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bellmc/pipeline.hpp"

namespace bellmc {

namespace {

std::vector<std::string> parse_variation_list(const std::string& spec) {
  if (spec == "all") return systematic_variation_names();
  if (spec == "none") return {};
  std::vector<std::string> names;
  std::istringstream in(spec);
  std::string item;
  const auto known = systematic_variation_names();
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    bool ok = false;
    for (const auto& k : known) ok = ok || k == item;
    if (!ok)
      throw std::invalid_argument("unknown systematic variation '" + item +
                                  "'");
    names.push_back(item);
  }
  return names;
}

double sample_total(const std::vector<EventRecord>& events, Sample sample,
                    double dt_max) {
  double n = 0.0;
  for (const auto& ev : events)
    if (ev.sample == sample && ev.dt_reco < dt_max) n += ev.weight;
  return n;
}

}  // namespace

std::vector<std::string> systematic_variation_names() {
  return {"fake_dstar_norm", "uncorrelated_dsl_norm", "window_center",
          "window_halfwidth", "window3_halfwidth",     "sideband_scale",
          "control_scale",    "mistag_omega"};
}

SystematicsScan scan_systematics(const std::vector<EventRecord>& events,
                                 const RunConfig& config) {
  const AnalysisOutput baseline = run_analysis(events, config);
  SystematicsScan scan;
  scan.s_baseline = baseline.result.s_value;

  const AnalysisSettings& an = config.analysis;
  const double hw3 = an.effective_window3_halfwidth();
  const double n_sideband =
      sample_total(events, Sample::kSideband, an.bin_max_ps);
  const double n_control =
      sample_total(events, Sample::kReversedLeptonControl, an.bin_max_ps);

  // Relative 2 sigma variation of a Poisson control-sample yield.
  const double rel_sb = n_sideband > 0.0 ? 2.0 / std::sqrt(n_sideband) : 0.0;
  const double rel_ctl = n_control > 0.0 ? 2.0 / std::sqrt(n_control) : 0.0;

  auto vary = [&](const std::string& name,
                  const AnalysisOverrides& up_over,
                  const AnalysisOverrides& down_over) {
    try {
      const double s_up =
          run_analysis(events, config, up_over).result.s_value;
      const double s_down =
          run_analysis(events, config, down_over).result.s_value;
      const double shift = std::max(std::fabs(s_up - scan.s_baseline),
                                    std::fabs(s_down - scan.s_baseline));
      scan.budget.add(name, shift);
    } catch (const std::exception& e) {
      throw std::runtime_error("systematics variation '" + name +
                               "' failed: " + e.what());
    }
  };

  for (const std::string& name : parse_variation_list(an.systematics)) {
    AnalysisOverrides up, down;
    if (name == "fake_dstar_norm") {
      if (rel_sb == 0.0) {
        scan.budget.add(name, 0.0);
        continue;
      }
      up.extra_sideband_factor = 1.0 + rel_sb;
      down.extra_sideband_factor = 1.0 - rel_sb;
    } else if (name == "uncorrelated_dsl_norm") {
      if (rel_ctl == 0.0) {
        scan.budget.add(name, 0.0);
        continue;
      }
      up.extra_control_factor = 1.0 + rel_ctl;
      down.extra_control_factor = 1.0 - rel_ctl;
    } else if (name == "window_center") {
      up.window_center_ps = 1.2 * an.window_center_ps;
      down.window_center_ps = 0.8 * an.window_center_ps;
    } else if (name == "window_halfwidth") {
      up.window_halfwidth_ps = 1.2 * an.window_halfwidth_ps;
      down.window_halfwidth_ps = 0.8 * an.window_halfwidth_ps;
    } else if (name == "window3_halfwidth") {
      up.window3_halfwidth_ps = 1.2 * hw3;
      down.window3_halfwidth_ps = 0.8 * hw3;
    } else if (name == "sideband_scale") {
      up.sideband_scale = 1.2 * config.detector.sideband_scale;
      down.sideband_scale = 0.8 * config.detector.sideband_scale;
    } else if (name == "control_scale") {
      up.control_scale = 1.2 * config.detector.control_scale;
      down.control_scale = 0.8 * config.detector.control_scale;
    } else if (name == "mistag_omega") {
      up.omega_a = std::min(1.2 * config.detector.omega_a, 0.499);
      up.omega_b = std::min(1.2 * config.detector.omega_b, 0.499);
      down.omega_a = 0.8 * config.detector.omega_a;
      down.omega_b = 0.8 * config.detector.omega_b;
    } else {
      throw std::logic_error("unhandled variation " + name);
    }
    vary(name, up, down);
  }
  return scan;
}

}  // namespace bellmc
