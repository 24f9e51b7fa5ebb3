#pragma once

#include <vector>

#include "bellmc/event.hpp"
#include "bellmc/rng.hpp"

namespace bellmc {

/// Parametric detector model: boost conversion, vertex smearing, mistag,
/// selection efficiency and control-sample assignment.
struct DetectorParams {
  double beta_gamma = 0.425;   // from the 3.5+8 GeV asymmetric beams
  double dz_sigma_um = 100.0;  // Gaussian dz resolution [um]
  double omega_a = 0.03;       // mistag probability, tag side a
  double omega_b = 0.03;       // mistag probability, tag side b
  double efficiency = 1.0;     // overall selection probability
  double sideband_scale = 1.0; // sideband : signal-region fake-D* yield
  double control_scale = 1.0;  // reversed-lepton control normalization

  /// Tagging dilution (1-2wa)(1-2wb); 1 for perfect tags.
  double dilution() const {
    return (1.0 - 2.0 * omega_a) * (1.0 - 2.0 * omega_b);
  }
  void validate() const;
};

/// dt = |dz| / (beta*gamma*c) [ps], dz in um.
double dt_from_dz(double dz_um, const DetectorParams& params);

/// Inverse of dt_from_dz for nonnegative dt: dz = dt * beta*gamma*c.
double dz_from_dt(double dt_ps, const DetectorParams& params);

/// Applies vertex smearing and mistag to one event:
///   dz_true = (t_a - t_b) * beta*gamma*c, dz_reco = dz_true + N(0, dz_sigma),
///   dt_reco = |dz_reco| / (beta*gamma*c), each tag flipped with its omega.
/// Returns false when the event is dropped by the efficiency draw; the
/// record is then left untouched.
bool smear_and_tag(EventRecord& event, const DetectorParams& params,
                   RandomStream& stream);

/// Detector pass over a dataset with per-event substreams (seed, event_id);
/// surviving events keep their original event_id.
std::vector<EventRecord> apply_detector(const std::vector<EventRecord>& events,
                                        const DetectorParams& params,
                                        std::uint64_t seed);

/// Splits fake_dstar events between signal region and sideband with relative
/// yield 1 : sideband_scale, uncorrelated_dsl between signal region and the
/// reversed-lepton control with 1 : control_scale; everything else stays in
/// the signal region.  Times and flavors are never altered.
void assign_samples(std::vector<EventRecord>& events,
                    const DetectorParams& params, RandomStream& stream);

/// assign_samples with the per-event substream convention.
void assign_samples(std::vector<EventRecord>& events,
                    const DetectorParams& params, std::uint64_t seed);

}  // namespace bellmc
