#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellmc/detector.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/physics.hpp"

namespace bellmc {

/// Analysis-stage settings: binning, S windows, corrections, systematics.
struct AnalysisSettings {
  double bin_width_ps = 0.5;
  double bin_max_ps = 10.0;
  double window_center_ps = 2.0;
  double window_halfwidth_ps = 0.5;
  /// Halfwidth of the 3dt window; negative means the proportional default
  /// 3 * window_halfwidth_ps.
  double window3_halfwidth_ps = -1.0;
  bool dilution_correction = false;
  double sigma_syst = 0.0;
  double significance_threshold = 3.0;
  /// "all", "none", or a comma-separated subset of the variation names.
  std::string systematics = "all";

  double effective_window3_halfwidth() const {
    return window3_halfwidth_ps < 0.0 ? 3.0 * window_halfwidth_ps
                                      : window3_halfwidth_ps;
  }
  std::vector<double> bin_edges() const;
  void validate() const;
};

struct EnsembleSettings {
  std::uint64_t n_experiments = 100;
  int n_threads = 1;

  void validate() const;
};

struct OutputSettings {
  std::string dir = ".";
};

/// Complete run configuration as read from the line-based config format.
struct RunConfig {
  PhysicsParams physics;
  DetectorParams detector;
  std::uint64_t n_events = 10000;
  std::uint64_t seed = 1;
  double frac_signal = 1.0;
  double frac_dss_mixing = 0.0;
  double frac_bpm_background = 0.0;
  double frac_fake_dstar = 0.0;
  double frac_uncorrelated_dsl = 0.0;
  AnalysisSettings analysis;
  EnsembleSettings ensemble;
  OutputSettings output;

  GeneratorConfig generator_config() const;
  void validate() const;
};

struct ConfigParseResult {
  RunConfig config;
  /// One notice per key that fell back to its documented default.
  std::vector<std::string> notices;
};

/// Parses the "key = value" format: one assignment per line, '#' starts a
/// comment, blank lines ignored.  Keys are dotted (physics.tau_b_ps); a bare
/// suffix is accepted when it is unambiguous.  Unknown keys and constraint
/// violations throw with the line number / key name.
ConfigParseResult parse_config(const std::string& text);

/// Reads and parses a config file.
ConfigParseResult load_config(const std::string& path);

/// Canonical serialization: every key in fixed order, 9-significant-digit
/// numbers.  parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// FNV-1a 64 over the canonical serialization, as a fixed-width hex string.
std::string config_hash(const RunConfig& config);

}  // namespace bellmc
