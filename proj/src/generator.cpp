#include "bellmc/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "bellmc/version.hpp"

namespace bellmc {

namespace {

void fill_boost_fields(EventRecord& ev, const PhysicsParams& params) {
  ev.dt_true = std::fabs(ev.t_a - ev.t_b);
  ev.dz_true = (ev.t_a - ev.t_b) * params.beta_gamma * kSpeedOfLightUmPerPs;
  ev.dz_reco = ev.dz_true;
  ev.dt_reco = ev.dt_true;
}

EventRecord sample_category(Category cat, const PhysicsParams& params,
                            RandomStream& stream) {
  switch (cat) {
    case Category::kSignal:
    case Category::kDssMixing: {
      EventRecord ev = sample_qm_pair(params, stream);
      ev.category = cat;
      return ev;
    }
    case Category::kBpmBackground: {
      // Charged B pairs cannot oscillate; lepton tags are charge-correlated,
      // so the pair is a fixed opposite-flavor pair.
      EventRecord ev;
      ev.t_a = stream.exponential(params.tau_b);
      ev.t_b = stream.exponential(params.tau_b);
      ev.flavor_a = stream.bernoulli(0.5) ? +1 : -1;
      ev.flavor_b = -ev.flavor_a;
      ev.tag_a = ev.flavor_a;
      ev.tag_b = ev.flavor_b;
      ev.category = cat;
      fill_boost_fields(ev, params);
      return ev;
    }
    case Category::kFakeDstar:
    case Category::kUncorrelatedDsl: {
      // Zero-correlation null model: independent times, independent flavors.
      EventRecord ev;
      ev.t_a = stream.exponential(params.tau_b);
      ev.t_b = stream.exponential(params.tau_b);
      ev.flavor_a = stream.bernoulli(0.5) ? +1 : -1;
      ev.flavor_b = stream.bernoulli(0.5) ? +1 : -1;
      ev.tag_a = ev.flavor_a;
      ev.tag_b = ev.flavor_b;
      ev.category = cat;
      fill_boost_fields(ev, params);
      return ev;
    }
  }
  throw std::logic_error("unhandled category");
}

}  // namespace

void GeneratorConfig::validate() const {
  params.validate();
  double sum = 0.0;
  for (double f : category_fractions) {
    if (f < 0.0 || f > 1.0)
      throw std::invalid_argument("category fractions must be in [0, 1]");
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("category fractions must sum to 1");
}

EventRecord sample_qm_pair(const PhysicsParams& params, RandomStream& stream) {
  EventRecord ev;
  ev.t_a = stream.exponential(params.tau_b);
  ev.t_b = stream.exponential(params.tau_b);
  const double dt = std::fabs(ev.t_a - ev.t_b);
  const double p_opposite = 0.5 * (1.0 + std::cos(params.delta_m * dt));
  ev.flavor_a = stream.bernoulli(0.5) ? +1 : -1;
  ev.flavor_b = stream.bernoulli(p_opposite) ? -ev.flavor_a : ev.flavor_a;
  ev.tag_a = ev.flavor_a;
  ev.tag_b = ev.flavor_b;
  ev.category = Category::kSignal;
  fill_boost_fields(ev, params);
  return ev;
}

EventRecord sample_lhv_pair(const LhvStrategy& strategy,
                            const PhysicsParams& params, RandomStream& stream) {
  EventRecord ev;
  ev.t_a = stream.exponential(params.tau_b);
  ev.t_b = stream.exponential(params.tau_b);
  const double lambda = strategy.hidden_sampler(stream);
  ev.flavor_a = strategy.outcome_a(ev.t_a, lambda);
  ev.flavor_b = strategy.outcome_b(ev.t_b, lambda);
  if ((ev.flavor_a != 1 && ev.flavor_a != -1) ||
      (ev.flavor_b != 1 && ev.flavor_b != -1))
    throw std::runtime_error("LHV strategy '" + strategy.name +
                             "' returned an outcome outside {+1,-1}");
  ev.tag_a = ev.flavor_a;
  ev.tag_b = ev.flavor_b;
  ev.category = Category::kSignal;
  fill_boost_fields(ev, params);
  return ev;
}

std::vector<EventRecord> generate_dataset(const GeneratorConfig& config) {
  config.validate();
  // Cumulative fraction table for the category draw.
  std::array<double, kNumCategories> cumulative{};
  double acc = 0.0;
  for (int i = 0; i < kNumCategories; ++i) {
    acc += config.category_fractions[i];
    cumulative[i] = acc;
  }
  cumulative[kNumCategories - 1] = 1.0;

  std::vector<EventRecord> events;
  events.reserve(config.n_events);
  for (std::uint64_t i = 0; i < config.n_events; ++i) {
    RandomStream stream(config.seed, i);
    const double u = stream.uniform();
    int cat = 0;
    while (cat < kNumCategories - 1 && u >= cumulative[cat]) ++cat;
    EventRecord ev =
        sample_category(static_cast<Category>(cat), config.params, stream);
    ev.event_id = i;
    events.push_back(ev);
  }
  return events;
}

std::vector<EventRecord> generate_lhv_dataset(const LhvStrategy& strategy,
                                              const PhysicsParams& params,
                                              std::uint64_t n_events,
                                              std::uint64_t seed) {
  params.validate();
  std::vector<EventRecord> events;
  events.reserve(n_events);
  for (std::uint64_t i = 0; i < n_events; ++i) {
    RandomStream stream(seed, i);
    EventRecord ev = sample_lhv_pair(strategy, params, stream);
    ev.event_id = i;
    events.push_back(ev);
  }
  return events;
}

}  // namespace bellmc
