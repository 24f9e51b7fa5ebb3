#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellmc/detector.hpp"
#include "bellmc/event.hpp"
#include "bellmc/physics.hpp"

namespace bellmc {

/// Weighted SF/OF tallies for one bin of one sample, with sum-of-squared
/// weights for error propagation.
struct FlavorTally {
  double sf = 0.0;
  double of = 0.0;
  double sf_w2 = 0.0;
  double of_w2 = 0.0;

  double total() const { return sf + of; }
  double total_w2() const { return sf_w2 + of_w2; }
};

/// Same-flavor / opposite-flavor counts per dt bin, kept separately for the
/// signal region and the two control samples.
class BinnedCounts {
 public:
  BinnedCounts() = default;
  explicit BinnedCounts(std::vector<double> edges);

  int n_bins() const { return static_cast<int>(edges_.size()) - 1; }
  const std::vector<double>& edges() const { return edges_; }
  double bin_lo(int i) const { return edges_[i]; }
  double bin_hi(int i) const { return edges_[i + 1]; }
  double bin_center(int i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }
  double bin_halfwidth(int i) const {
    return 0.5 * (edges_[i + 1] - edges_[i]);
  }

  /// Bin index containing dt, or -1 when outside [edges.front, edges.back).
  int find_bin(double dt) const;

  FlavorTally& tally(Sample s, int bin);
  const FlavorTally& tally(Sample s, int bin) const;

  /// Bins whose subtracted counts were clamped at zero.
  const std::vector<int>& clamped_bins() const { return clamped_bins_; }
  void mark_clamped(int bin) { clamped_bins_.push_back(bin); }

  bool same_binning(const BinnedCounts& other, double tol = 1e-12) const;

 private:
  std::vector<double> edges_;
  std::array<std::vector<FlavorTally>, kNumSamples> tallies_;
  std::vector<int> clamped_bins_;
};

/// Tallies events with dt_reco inside [window_lo, window_hi) into their dt
/// bin, split by tag agreement (tag_a == tag_b -> SF) and by sample.
BinnedCounts bin_events(const std::vector<EventRecord>& events,
                        const std::vector<double>& bin_edges, double window_lo,
                        double window_hi);

/// Convenience overload: window spans the full binning range.
BinnedCounts bin_events(const std::vector<EventRecord>& events,
                        const std::vector<double>& bin_edges);

/// Per-bin background subtraction: signal-region counts are reduced by the
/// sideband counts scaled by 1/sideband_scale and by the reversed-lepton
/// control counts scaled by 1/control_scale.  Negative results clamp to zero
/// and the bin is flagged.  Variances propagate via sum-of-squared weights.
/// extra_sideband_factor / extra_control_factor scale the subtraction terms
/// and exist for systematic variations (1.0 = nominal).
BinnedCounts subtract_backgrounds(const BinnedCounts& counts,
                                  const DetectorParams& det,
                                  double extra_sideband_factor = 1.0,
                                  double extra_control_factor = 1.0);

/// Quality flags carried by a CorrelationEstimate.
namespace estimate_flags {
inline constexpr unsigned kUndefined = 1u << 0;  // empty bin, no estimate
inline constexpr unsigned kDegenerate = 1u << 1; // N_SF or N_OF was zero
inline constexpr unsigned kClamped = 1u << 2;    // subtraction clamped a count
inline constexpr unsigned kDilutionCorrected = 1u << 3;
}  // namespace estimate_flags

/// Normalized correlation in one bin.  Sign convention: E_R = (OF - SF) / N,
/// so E_R(0) = +1 and the QM expectation is cos(dm dt).
struct CorrelationEstimate {
  double dt_center = 0.0;     // ps
  double dt_halfwidth = 0.0;  // ps
  double e_r = 0.0;
  double sigma_stat = 0.0;
  double n_effective = 0.0;   // (sum w)^2 / sum w^2
  unsigned flags = 0;

  bool defined() const { return (flags & estimate_flags::kUndefined) == 0; }
};

/// E_R = (N_OF - N_SF)/(N_OF + N_SF) with sigma = sqrt((1 - E^2)/N_eff).
/// Degenerate bins (one count zero) get the sigma floor 1/N_eff and a flag;
/// empty bins come back flagged undefined.
CorrelationEstimate estimate_er(const FlavorTally& tally, double dt_center,
                                double dt_halfwidth);

/// Divides e_r and sigma_stat by the tagging dilution (1-2wa)(1-2wb).
/// The corrected estimate may exceed |1|; the flag records the correction.
CorrelationEstimate correct_dilution(const CorrelationEstimate& est,
                                     double omega_a, double omega_b);

/// S at a dt window with statistical and systematic uncertainties.
struct ChshResult {
  double dt_center = 0.0;
  double dt_halfwidth = 0.0;
  double s_value = 0.0;
  double sigma_stat = 0.0;
  double sigma_syst = 0.0;

  double sigma_total() const;
};

/// S = 3 E_R(dt) - E_R(3dt) with sigma_stat = sqrt(9 s1^2 + s3^2).
/// The two windows must not overlap (independent-bin error formula) and both
/// estimates must be defined.
ChshResult compute_s(const CorrelationEstimate& e_at_dt,
                     const CorrelationEstimate& e_at_3dt);

/// (s - 2) / sqrt(sigma_stat^2 + sigma_syst^2); throws on zero uncertainty.
double significance(const ChshResult& result);

/// One named systematic shift |S_varied - S_baseline|.
struct SystematicShift {
  std::string source;
  double shift = 0.0;
};

/// Named systematic shifts combined in quadrature.
struct SystematicsBudget {
  std::vector<SystematicShift> sources;

  void add(const std::string& source, double shift) {
    sources.push_back({source, shift});
  }
  double total() const;
};

/// Exponentially-weighted window average of cos(dm t) over [lo, hi]:
/// the value a large-sample E_R estimate converges to for pure signal with
/// ideal resolution.  Closed form of int e^{-t/tau} cos(dm t) dt.
double expected_er_signal_window(double lo, double hi,
                                 const PhysicsParams& params);

/// Probability that |t_a - t_b| falls in [lo, hi] for independent
/// exponential(tau) times (the dt marginal is exponential(tau)).
double window_probability(double lo, double hi, double tau);

}  // namespace bellmc
