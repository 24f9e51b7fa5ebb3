#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bellmc/event.hpp"
#include "bellmc/lhv.hpp"
#include "bellmc/physics.hpp"
#include "bellmc/rng.hpp"

namespace bellmc {

/// Event-generation settings.  category_fractions must sum to 1.
struct GeneratorConfig {
  std::uint64_t n_events = 0;
  std::uint64_t seed = 1;
  PhysicsParams params;
  std::array<double, kNumCategories> category_fractions = {1.0, 0.0, 0.0, 0.0,
                                                           0.0};

  double fraction(Category c) const {
    return category_fractions[static_cast<int>(c)];
  }
  void set_fraction(Category c, double f) {
    category_fractions[static_cast<int>(c)] = f;
  }
  void validate() const;
};

/// One signal-category pair under the QM joint rate: both times exponential
/// with mean tau, then P(opposite flavor | dt) = (1 + cos(dm dt)) / 2, which
/// reproduces rate_joint exactly.  Tags start equal to the true flavors.
EventRecord sample_qm_pair(const PhysicsParams& params, RandomStream& stream);

/// One pair under an LHV strategy: independent exponential times, a single
/// shared lambda, outcomes evaluated locally per side.
EventRecord sample_lhv_pair(const LhvStrategy& strategy,
                            const PhysicsParams& params, RandomStream& stream);

/// n_events records with categories drawn from category_fractions.  Event i
/// uses substream (seed, i), so output is reproducible and independent of
/// any worker partitioning; event_id is sequential from 0.
std::vector<EventRecord> generate_dataset(const GeneratorConfig& config);

/// Same-seed LHV dataset generation used by the LHV test harness.
std::vector<EventRecord> generate_lhv_dataset(const LhvStrategy& strategy,
                                              const PhysicsParams& params,
                                              std::uint64_t n_events,
                                              std::uint64_t seed);

}  // namespace bellmc
