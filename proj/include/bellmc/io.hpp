#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellmc/analysis.hpp"
#include "bellmc/config.hpp"
#include "bellmc/event.hpp"

namespace bellmc {

/// Provenance block embedded in every output document.
struct RunMetadata {
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::string timestamp_utc;

  static RunMetadata make(const RunConfig& config);
};

/// Writes content to path via a temporary file and rename, so readers never
/// observe a partial file.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Event CSV schema (exact header, 9-significant-digit decimals):
///   event_id,t_a_ps,t_b_ps,dt_true_ps,dz_reco_um,dt_reco_ps,
///   flavor_a,flavor_b,tag_a,tag_b,category,sample,weight
extern const char* kEventCsvHeader;

std::string events_to_csv(const std::vector<EventRecord>& records);
void write_events(const std::string& path,
                  const std::vector<EventRecord>& records);

/// Parses an event CSV; malformed rows and header mismatches throw with the
/// 1-based row number.  dz_true is reconstructed from dt_reco's sign
/// convention (not serialized).
std::vector<EventRecord> events_from_csv(const std::string& text);
std::vector<EventRecord> read_events(const std::string& path);

/// Figure-data files for the analytic curves: columns x, value, sigma and a
/// constant classical bound column at 2.
struct FigureFiles {
  std::string photon_chsh;        // theta_rad,s,sigma,bound
  std::string meson_damped_chsh;  // dt_ps,s,sigma,bound (t' = 0 slice)
  std::string meson_renorm_chsh;  // dt_ps,s,sigma,bound
};

/// Emits the three prediction curves under dir; returns the paths written.
/// The renormalized meson curve equals the photon curve at theta = dm*dt
/// row by row; the damped curve never exceeds the bound.
FigureFiles emit_figures(const PhysicsParams& params, const std::string& dir);

/// Measured correlation / S data files produced by analyze:
/// er_data.csv (dt_ps,e_r,sigma,bound) and s_data.csv (dt_ps,s,sigma,bound).
void emit_analysis_figures(const std::vector<CorrelationEstimate>& bins,
                           const PhysicsParams& params,
                           const std::string& dir);

}  // namespace bellmc
