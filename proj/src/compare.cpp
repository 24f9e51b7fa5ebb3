#include "bellmc/compare.hpp"

#include <cmath>
#include <stdexcept>

#include "bellmc/stats.hpp"

namespace bellmc {

namespace {

constexpr double kMinCountsPerBin = 5.0;

// Per-bin S from a vector of estimates: pairs bin i with the bin containing
// 3 * center(i); skips overlaps and undefined partners.
struct SPoint {
  double center;
  double s;
  double sigma;
  bool valid;
};

std::vector<SPoint> s_points(const std::vector<CorrelationEstimate>& bins) {
  std::vector<SPoint> points;
  for (const auto& b : bins) {
    SPoint p{b.dt_center, 0.0, 0.0, false};
    if (b.defined()) {
      const double target = 3.0 * b.dt_center;
      for (const auto& q : bins) {
        if (!q.defined()) continue;
        if (std::fabs(q.dt_center - target) > q.dt_halfwidth + 1e-9) continue;
        const bool overlap =
            b.dt_center + b.dt_halfwidth > q.dt_center - q.dt_halfwidth &&
            q.dt_center + q.dt_halfwidth > b.dt_center - b.dt_halfwidth;
        if (overlap) break;
        p.s = 3.0 * b.e_r - q.e_r;
        p.sigma = std::sqrt(9.0 * b.sigma_stat * b.sigma_stat +
                            q.sigma_stat * q.sigma_stat);
        p.valid = true;
        break;
      }
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace

ComparisonReport compare_to_qm(const BinnedCounts& data,
                               const BinnedCounts& reference) {
  if (!data.same_binning(reference))
    throw std::invalid_argument("compare_to_qm: binning mismatch");

  ComparisonReport report;
  const int n_bins = data.n_bins();

  double n_data = 0.0, n_ref = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    n_data += data.tally(Sample::kSignalRegion, i).total();
    n_ref += reference.tally(Sample::kSignalRegion, i).total();
  }
  const double scale = n_ref > 0.0 ? n_data / n_ref : 1.0;

  // Count panels: reference scaled to the data total.
  auto count_panel = [&](const char* name, bool same_flavor) {
    ComparisonPanel panel;
    panel.name = name;
    for (int i = 0; i < n_bins; ++i) {
      const FlavorTally& d = data.tally(Sample::kSignalRegion, i);
      const FlavorTally& r = reference.tally(Sample::kSignalRegion, i);
      const double dv = same_flavor ? d.sf : d.of;
      const double rv = (same_flavor ? r.sf : r.of) * scale;
      const double var = (same_flavor ? d.sf_w2 : d.of_w2) +
                         scale * scale * (same_flavor ? r.sf_w2 : r.of_w2);
      if (dv + rv < kMinCountsPerBin || !(var > 0.0)) continue;
      BinPull p;
      p.dt_center = data.bin_center(i);
      p.data = dv;
      p.reference = rv;
      p.sigma = std::sqrt(var);
      p.pull = (dv - rv) / p.sigma;
      panel.chi2 += p.pull * p.pull;
      ++panel.ndof;
      panel.pulls.push_back(p);
    }
    report.panels.push_back(std::move(panel));
  };
  count_panel("of", false);
  count_panel("sf", true);

  // E_R panel.
  std::vector<CorrelationEstimate> data_est, ref_est;
  for (int i = 0; i < n_bins; ++i) {
    data_est.push_back(estimate_er(data.tally(Sample::kSignalRegion, i),
                                   data.bin_center(i), data.bin_halfwidth(i)));
    ref_est.push_back(estimate_er(reference.tally(Sample::kSignalRegion, i),
                                  reference.bin_center(i),
                                  reference.bin_halfwidth(i)));
  }
  {
    ComparisonPanel panel;
    panel.name = "e_r";
    for (int i = 0; i < n_bins; ++i) {
      if (!data_est[i].defined() || !ref_est[i].defined()) continue;
      const double var =
          data_est[i].sigma_stat * data_est[i].sigma_stat +
          ref_est[i].sigma_stat * ref_est[i].sigma_stat;
      if (!(var > 0.0)) continue;
      BinPull p;
      p.dt_center = data.bin_center(i);
      p.data = data_est[i].e_r;
      p.reference = ref_est[i].e_r;
      p.sigma = std::sqrt(var);
      p.pull = (p.data - p.reference) / p.sigma;
      panel.chi2 += p.pull * p.pull;
      ++panel.ndof;
      panel.pulls.push_back(p);
    }
    report.panels.push_back(std::move(panel));
  }

  // S panel from paired bins.
  {
    ComparisonPanel panel;
    panel.name = "s";
    const auto dp = s_points(data_est);
    const auto rp = s_points(ref_est);
    for (std::size_t i = 0; i < dp.size(); ++i) {
      if (!dp[i].valid || !rp[i].valid) continue;
      const double var = dp[i].sigma * dp[i].sigma + rp[i].sigma * rp[i].sigma;
      if (!(var > 0.0)) continue;
      BinPull p;
      p.dt_center = dp[i].center;
      p.data = dp[i].s;
      p.reference = rp[i].s;
      p.sigma = std::sqrt(var);
      p.pull = (p.data - p.reference) / p.sigma;
      panel.chi2 += p.pull * p.pull;
      ++panel.ndof;
      panel.pulls.push_back(p);
    }
    report.panels.push_back(std::move(panel));
  }

  for (const auto& panel : report.panels) {
    report.chi2_total += panel.chi2;
    report.ndof_total += panel.ndof;
  }
  if (report.ndof_total > 0)
    report.incompatible =
        report.chi2_total > chi2_quantile(0.999, report.ndof_total);
  return report;
}

}  // namespace bellmc
