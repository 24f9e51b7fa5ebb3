#include "bellmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellmc {

BinnedCounts::BinnedCounts(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2)
    throw std::invalid_argument("binning needs at least two edges");
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (!(edges_[i] > edges_[i - 1]))
      throw std::invalid_argument("bin edges must be strictly increasing");
  for (auto& t : tallies_) t.assign(edges_.size() - 1, FlavorTally{});
}

int BinnedCounts::find_bin(double dt) const {
  if (dt < edges_.front() || dt >= edges_.back()) return -1;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), dt);
  return static_cast<int>(it - edges_.begin()) - 1;
}

FlavorTally& BinnedCounts::tally(Sample s, int bin) {
  return tallies_[static_cast<int>(s)].at(bin);
}

const FlavorTally& BinnedCounts::tally(Sample s, int bin) const {
  return tallies_[static_cast<int>(s)].at(bin);
}

bool BinnedCounts::same_binning(const BinnedCounts& other, double tol) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (std::fabs(edges_[i] - other.edges_[i]) > tol) return false;
  return true;
}

BinnedCounts bin_events(const std::vector<EventRecord>& events,
                        const std::vector<double>& bin_edges, double window_lo,
                        double window_hi) {
  BinnedCounts counts(bin_edges);
  for (const EventRecord& ev : events) {
    if (ev.dt_reco < window_lo || ev.dt_reco >= window_hi) continue;
    const int bin = counts.find_bin(ev.dt_reco);
    if (bin < 0) continue;
    FlavorTally& t = counts.tally(ev.sample, bin);
    const double w = ev.weight;
    if (ev.same_flavor_tagged()) {
      t.sf += w;
      t.sf_w2 += w * w;
    } else {
      t.of += w;
      t.of_w2 += w * w;
    }
  }
  return counts;
}

BinnedCounts bin_events(const std::vector<EventRecord>& events,
                        const std::vector<double>& bin_edges) {
  if (bin_edges.size() < 2)
    throw std::invalid_argument("binning needs at least two edges");
  return bin_events(events, bin_edges, bin_edges.front(), bin_edges.back());
}

BinnedCounts subtract_backgrounds(const BinnedCounts& counts,
                                  const DetectorParams& det,
                                  double extra_sideband_factor,
                                  double extra_control_factor) {
  det.validate();
  BinnedCounts out = counts;
  const double f_sb = extra_sideband_factor / det.sideband_scale;
  const double f_ctl = extra_control_factor / det.control_scale;
  for (int bin = 0; bin < counts.n_bins(); ++bin) {
    const FlavorTally& sr = counts.tally(Sample::kSignalRegion, bin);
    const FlavorTally& sb = counts.tally(Sample::kSideband, bin);
    const FlavorTally& ctl =
        counts.tally(Sample::kReversedLeptonControl, bin);

    FlavorTally& t = out.tally(Sample::kSignalRegion, bin);
    t.sf = sr.sf - f_sb * sb.sf - f_ctl * ctl.sf;
    t.of = sr.of - f_sb * sb.of - f_ctl * ctl.of;
    t.sf_w2 = sr.sf_w2 + f_sb * f_sb * sb.sf_w2 + f_ctl * f_ctl * ctl.sf_w2;
    t.of_w2 = sr.of_w2 + f_sb * f_sb * sb.of_w2 + f_ctl * f_ctl * ctl.of_w2;
    if (t.sf < 0.0 || t.of < 0.0) {
      t.sf = std::max(t.sf, 0.0);
      t.of = std::max(t.of, 0.0);
      out.mark_clamped(bin);
    }
  }
  return out;
}

CorrelationEstimate estimate_er(const FlavorTally& tally, double dt_center,
                                double dt_halfwidth) {
  CorrelationEstimate est;
  est.dt_center = dt_center;
  est.dt_halfwidth = dt_halfwidth;
  const double n = tally.total();
  if (!(n > 0.0)) {
    est.flags |= estimate_flags::kUndefined;
    return est;
  }
  const double w2 = tally.total_w2();
  est.n_effective = w2 > 0.0 ? n * n / w2 : n;
  est.e_r = (tally.of - tally.sf) / n;
  est.sigma_stat = std::sqrt(
      std::max(0.0, (1.0 - est.e_r * est.e_r) / est.n_effective));
  if (tally.sf == 0.0 || tally.of == 0.0) {
    est.flags |= estimate_flags::kDegenerate;
    est.sigma_stat = std::max(est.sigma_stat, 1.0 / est.n_effective);
  }
  return est;
}

CorrelationEstimate correct_dilution(const CorrelationEstimate& est,
                                     double omega_a, double omega_b) {
  if (omega_a < 0.0 || omega_a >= 0.5 || omega_b < 0.0 || omega_b >= 0.5)
    throw std::invalid_argument("mistag probabilities must be in [0, 0.5)");
  const double r = (1.0 - 2.0 * omega_a) * (1.0 - 2.0 * omega_b);
  CorrelationEstimate out = est;
  out.e_r /= r;
  out.sigma_stat /= r;
  out.flags |= estimate_flags::kDilutionCorrected;
  return out;
}

double ChshResult::sigma_total() const {
  return std::sqrt(sigma_stat * sigma_stat + sigma_syst * sigma_syst);
}

ChshResult compute_s(const CorrelationEstimate& e_at_dt,
                     const CorrelationEstimate& e_at_3dt) {
  if (!e_at_dt.defined() || !e_at_3dt.defined())
    throw std::invalid_argument("compute_s needs two defined estimates");
  // Independent-bin error formula requires disjoint windows.
  const double lo1 = e_at_dt.dt_center - e_at_dt.dt_halfwidth;
  const double hi1 = e_at_dt.dt_center + e_at_dt.dt_halfwidth;
  const double lo3 = e_at_3dt.dt_center - e_at_3dt.dt_halfwidth;
  const double hi3 = e_at_3dt.dt_center + e_at_3dt.dt_halfwidth;
  if (hi1 > lo3 && hi3 > lo1)
    throw std::invalid_argument("dt and 3dt windows overlap");

  ChshResult res;
  res.dt_center = e_at_dt.dt_center;
  res.dt_halfwidth = e_at_dt.dt_halfwidth;
  res.s_value = 3.0 * e_at_dt.e_r - e_at_3dt.e_r;
  res.sigma_stat = std::sqrt(9.0 * e_at_dt.sigma_stat * e_at_dt.sigma_stat +
                             e_at_3dt.sigma_stat * e_at_3dt.sigma_stat);
  return res;
}

double significance(const ChshResult& result) {
  const double total = result.sigma_total();
  if (!(total > 0.0))
    throw std::invalid_argument("significance requires nonzero uncertainty");
  return (result.s_value - 2.0) / total;
}

double SystematicsBudget::total() const {
  double sum2 = 0.0;
  for (const auto& s : sources) sum2 += s.shift * s.shift;
  return std::sqrt(sum2);
}

double expected_er_signal_window(double lo, double hi,
                                 const PhysicsParams& params) {
  if (!(hi > lo) || lo < 0.0)
    throw std::invalid_argument("window must satisfy 0 <= lo < hi");
  params.validate();
  const double a = 1.0 / params.tau_b;
  const double b = params.delta_m;
  auto cos_antideriv = [a, b](double t) {
    return std::exp(-a * t) * (b * std::sin(b * t) - a * std::cos(b * t)) /
           (a * a + b * b);
  };
  const double num = cos_antideriv(hi) - cos_antideriv(lo);
  const double den = (std::exp(-a * lo) - std::exp(-a * hi)) / a;
  return num / den;
}

double window_probability(double lo, double hi, double tau) {
  return std::exp(-lo / tau) - std::exp(-hi / tau);
}

}  // namespace bellmc
