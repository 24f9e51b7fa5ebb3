#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bellmc {

/// Physics origin of a generated event.
enum class Category {
  kSignal,            // B0 -> D*lnu, oscillating singlet pair
  kDssMixing,         // B0 -> D**lnu, oscillates like signal
  kBpmBackground,     // charged B: no oscillation, fixed opposite-flavor
  kFakeDstar,         // combinatorial fake D*: uncorrelated flavors
  kUncorrelatedDsl,   // true D* paired with a lepton from the other B
};

/// Which measurement sample an event lands in after selection.
enum class Sample {
  kSignalRegion,
  kSideband,                // mass-difference sideband (fake D* control)
  kReversedLeptonControl,   // reversed-lepton kinematic control
};

inline constexpr int kNumCategories = 5;
inline constexpr int kNumSamples = 3;

std::string to_string(Category c);
std::string to_string(Sample s);
Category category_from_string(const std::string& name);
Sample sample_from_string(const std::string& name);

/// One meson-pair decay.  Times in ps, lengths in um; flavors and tags are
/// +1 (B0) or -1 (B0bar).  dt_true == |t_a - t_b| always; tag fields equal
/// the true flavors until the detector model runs.
struct EventRecord {
  std::uint64_t event_id = 0;
  double t_a = 0.0;
  double t_b = 0.0;
  double dt_true = 0.0;
  double dz_true = 0.0;  // signed, from t_a - t_b; not serialized
  double dz_reco = 0.0;  // signed, smeared
  double dt_reco = 0.0;  // |dz_reco| / (beta*gamma*c)
  int flavor_a = +1;
  int flavor_b = +1;
  int tag_a = +1;
  int tag_b = +1;
  Category category = Category::kSignal;
  Sample sample = Sample::kSignalRegion;
  double weight = 1.0;

  bool same_flavor_true() const { return flavor_a == flavor_b; }
  bool same_flavor_tagged() const { return tag_a == tag_b; }

  void validate() const {
    if (t_a < 0.0 || t_b < 0.0)
      throw std::invalid_argument("event times must be nonnegative");
    auto pm = [](int v) { return v == 1 || v == -1; };
    if (!pm(flavor_a) || !pm(flavor_b) || !pm(tag_a) || !pm(tag_b))
      throw std::invalid_argument("flavors and tags must be +1 or -1");
    if (weight < 0.0) throw std::invalid_argument("weight must be >= 0");
  }
};

}  // namespace bellmc
