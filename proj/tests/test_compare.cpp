#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellmc/compare.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/lhv.hpp"

using namespace bellmc;

namespace {
const PhysicsParams kBelle{1.542, 0.507, 0.425};

BinnedCounts qm_counts(std::uint64_t n, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n_events = n;
  cfg.seed = seed;
  cfg.params = kBelle;
  std::vector<double> edges;
  for (double e = 0.0; e <= 8.0001; e += 0.5) edges.push_back(e);
  return bin_events(generate_dataset(cfg), edges);
}
}  // namespace

TEST_CASE("identical inputs give zero chi2 and zero pulls") {
  const BinnedCounts counts = qm_counts(50000, 3);
  const ComparisonReport rep = compare_to_qm(counts, counts);
  CHECK(rep.chi2_total == doctest::Approx(0.0));
  CHECK_FALSE(rep.incompatible);
  for (const auto& panel : rep.panels)
    for (const auto& p : panel.pulls) CHECK(p.pull == doctest::Approx(0.0));
}

TEST_CASE("binning mismatch is rejected") {
  const BinnedCounts a = qm_counts(1000, 3);
  BinnedCounts b({0.0, 4.0, 8.0});
  CHECK_THROWS_AS(compare_to_qm(a, b), std::invalid_argument);
}

TEST_CASE("independent same-config runs are statistically compatible") {
  const BinnedCounts a = qm_counts(200000, 11);
  const BinnedCounts b = qm_counts(200000, 12);
  const ComparisonReport rep = compare_to_qm(a, b);
  REQUIRE(rep.ndof_total > 10);
  CHECK(rep.chi2_per_dof() > 0.5);
  CHECK(rep.chi2_per_dof() < 1.6);
  CHECK_FALSE(rep.incompatible);
}

TEST_CASE("reference scaling handles different sample sizes") {
  const BinnedCounts data = qm_counts(50000, 21);
  const BinnedCounts mc = qm_counts(200000, 22);
  const ComparisonReport rep = compare_to_qm(data, mc);
  CHECK_FALSE(rep.incompatible);
  CHECK(rep.chi2_per_dof() < 1.6);
}

TEST_CASE("QM vs local-oscillation LHV is flagged incompatible") {
  const BinnedCounts qm = qm_counts(400000, 31);
  GeneratorConfig cfg;
  cfg.n_events = 400000;
  cfg.seed = 32;
  cfg.params = kBelle;
  const auto strat = make_local_oscillation_strategy(kBelle.delta_m);
  std::vector<double> edges;
  for (double e = 0.0; e <= 8.0001; e += 0.5) edges.push_back(e);
  const BinnedCounts lhv = bin_events(
      generate_lhv_dataset(strat, kBelle, cfg.n_events, cfg.seed), edges);
  const ComparisonReport rep = compare_to_qm(qm, lhv);
  CHECK(rep.incompatible);
}

TEST_CASE("four panels are reported in order") {
  const BinnedCounts counts = qm_counts(20000, 41);
  const ComparisonReport rep = compare_to_qm(counts, counts);
  REQUIRE(rep.panels.size() == 4);
  CHECK(rep.panels[0].name == "of");
  CHECK(rep.panels[1].name == "sf");
  CHECK(rep.panels[2].name == "e_r");
  CHECK(rep.panels[3].name == "s");
}
