#include "bellmc/detector.hpp"

#include <cmath>
#include <stdexcept>

#include "bellmc/version.hpp"

namespace bellmc {

void DetectorParams::validate() const {
  if (!(beta_gamma > 0.0))
    throw std::invalid_argument("beta_gamma must be > 0");
  if (dz_sigma_um < 0.0)
    throw std::invalid_argument("dz_sigma_um must be >= 0");
  if (omega_a < 0.0 || omega_a >= 0.5 || omega_b < 0.0 || omega_b >= 0.5)
    throw std::invalid_argument("mistag probabilities must be in [0, 0.5)");
  if (!(efficiency > 0.0) || efficiency > 1.0)
    throw std::invalid_argument("efficiency must be in (0, 1]");
  if (!(sideband_scale > 0.0))
    throw std::invalid_argument("sideband_scale must be > 0");
  if (!(control_scale > 0.0))
    throw std::invalid_argument("control_scale must be > 0");
}

double dt_from_dz(double dz_um, const DetectorParams& params) {
  return std::fabs(dz_um) / (params.beta_gamma * kSpeedOfLightUmPerPs);
}

double dz_from_dt(double dt_ps, const DetectorParams& params) {
  return dt_ps * params.beta_gamma * kSpeedOfLightUmPerPs;
}

bool smear_and_tag(EventRecord& event, const DetectorParams& params,
                   RandomStream& stream) {
  // Draw order is part of the stream contract; keep it stable.
  const double g = stream.gaussian();
  const bool flip_a = stream.bernoulli(params.omega_a);
  const bool flip_b = stream.bernoulli(params.omega_b);
  const bool keep =
      params.efficiency >= 1.0 ? true : stream.bernoulli(params.efficiency);
  if (!keep) return false;

  const double bg_c = params.beta_gamma * kSpeedOfLightUmPerPs;
  event.dz_true = (event.t_a - event.t_b) * bg_c;
  event.dz_reco = event.dz_true + params.dz_sigma_um * g;
  event.dt_reco = std::fabs(event.dz_reco) / bg_c;
  if (flip_a) event.tag_a = -event.tag_a;
  if (flip_b) event.tag_b = -event.tag_b;
  return true;
}

std::vector<EventRecord> apply_detector(const std::vector<EventRecord>& events,
                                        const DetectorParams& params,
                                        std::uint64_t seed) {
  params.validate();
  std::vector<EventRecord> out;
  out.reserve(events.size());
  for (const EventRecord& ev : events) {
    RandomStream stream(seed, ev.event_id, stream_domain::kDetector);
    EventRecord smeared = ev;
    if (smear_and_tag(smeared, params, stream)) out.push_back(smeared);
  }
  return out;
}

void assign_samples(std::vector<EventRecord>& events,
                    const DetectorParams& params, RandomStream& stream) {
  params.validate();
  const double p_sideband = params.sideband_scale / (1.0 + params.sideband_scale);
  const double p_control = params.control_scale / (1.0 + params.control_scale);
  for (EventRecord& ev : events) {
    switch (ev.category) {
      case Category::kFakeDstar:
        ev.sample = stream.bernoulli(p_sideband) ? Sample::kSideband
                                                 : Sample::kSignalRegion;
        break;
      case Category::kUncorrelatedDsl:
        ev.sample = stream.bernoulli(p_control)
                        ? Sample::kReversedLeptonControl
                        : Sample::kSignalRegion;
        break;
      default:
        ev.sample = Sample::kSignalRegion;
        break;
    }
  }
}

void assign_samples(std::vector<EventRecord>& events,
                    const DetectorParams& params, std::uint64_t seed) {
  params.validate();
  const double p_sideband = params.sideband_scale / (1.0 + params.sideband_scale);
  const double p_control = params.control_scale / (1.0 + params.control_scale);
  for (EventRecord& ev : events) {
    RandomStream stream(seed, ev.event_id, stream_domain::kSampleAssignment);
    switch (ev.category) {
      case Category::kFakeDstar:
        ev.sample = stream.bernoulli(p_sideband) ? Sample::kSideband
                                                 : Sample::kSignalRegion;
        break;
      case Category::kUncorrelatedDsl:
        ev.sample = stream.bernoulli(p_control)
                        ? Sample::kReversedLeptonControl
                        : Sample::kSignalRegion;
        break;
      default:
        ev.sample = Sample::kSignalRegion;
        break;
    }
  }
}

}  // namespace bellmc
