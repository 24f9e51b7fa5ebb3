#pragma once

#include <string>
#include <vector>

#include "bellmc/analysis.hpp"

namespace bellmc {

struct BinPull {
  double dt_center = 0.0;
  double data = 0.0;
  double reference = 0.0;
  double sigma = 0.0;
  double pull = 0.0;
};

struct ComparisonPanel {
  std::string name;  // "of", "sf", "e_r", "s"
  std::vector<BinPull> pulls;
  double chi2 = 0.0;
  int ndof = 0;
};

/// Data-vs-prediction comparison over four panels (OF counts, SF counts,
/// E_R, S).  The reference counts are scaled to the data total; count panels
/// skip bins with fewer than 5 combined entries.
struct ComparisonReport {
  std::vector<ComparisonPanel> panels;
  double chi2_total = 0.0;
  int ndof_total = 0;
  /// Set when chi2_total exceeds the 99.9% quantile for ndof_total.
  bool incompatible = false;

  double chi2_per_dof() const {
    return ndof_total > 0 ? chi2_total / ndof_total : 0.0;
  }
};

/// Signal-region comparison of two binned samples with identical edges;
/// throws on binning mismatch.
ComparisonReport compare_to_qm(const BinnedCounts& data,
                               const BinnedCounts& reference);

}  // namespace bellmc
