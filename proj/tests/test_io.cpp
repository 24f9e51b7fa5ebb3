#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "bellmc/documents.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/io.hpp"
#include "bellmc/physics.hpp"
#include "bellmc/pipeline.hpp"
#include "bellmc/rng.hpp"

using namespace bellmc;
namespace fs = std::filesystem;

namespace {
const PhysicsParams kBelle{1.542, 0.507, 0.425};

std::vector<EventRecord> random_records(int n, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n_events = n;
  cfg.seed = seed;
  cfg.params = kBelle;
  cfg.set_fraction(Category::kSignal, 0.6);
  cfg.set_fraction(Category::kDssMixing, 0.1);
  cfg.set_fraction(Category::kBpmBackground, 0.1);
  cfg.set_fraction(Category::kFakeDstar, 0.1);
  cfg.set_fraction(Category::kUncorrelatedDsl, 0.1);
  auto events = generate_dataset(cfg);
  DetectorParams det;
  events = apply_detector(events, det, seed);
  assign_samples(events, det, seed);
  return events;
}

fs::path temp_dir() {
  const fs::path dir =
      fs::temp_directory_path() / "bellmc_io_test";
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("empty list writes a header-only file") {
  const std::string csv = events_to_csv({});
  CHECK(csv == std::string(kEventCsvHeader) + "\n");
  CHECK(events_from_csv(csv).empty());
}

TEST_CASE("event CSV round trip preserves records at 9 digits") {
  const auto records = random_records(1000, 8);
  const std::string once = events_to_csv(records);
  const auto back = events_from_csv(once);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].event_id == records[i].event_id);
    CHECK(back[i].t_a == doctest::Approx(records[i].t_a).epsilon(1e-8));
    CHECK(back[i].flavor_b == records[i].flavor_b);
    CHECK(back[i].category == records[i].category);
    CHECK(back[i].sample == records[i].sample);
  }
  // Rewrite is bit-identical: the 9-digit format is a fixed point of
  // parse-then-format.
  CHECK(events_to_csv(back) == once);
}

TEST_CASE("header mismatch and malformed rows are rejected with row numbers") {
  CHECK_THROWS_AS(events_from_csv("id,a,b\n1,2,3\n"), std::invalid_argument);

  const std::string header(kEventCsvHeader);
  try {
    events_from_csv(header + "\n1,0.5,0.5,0,0,0,1,1,1,1,signal,signal_region\n");
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  try {
    events_from_csv(header +
                    "\n1,0.5,0.5,0,0,0,3,1,1,1,signal,signal_region,1\n");
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("flavor_a") != std::string::npos);
  }
}

TEST_CASE("category field accepts exactly the five names") {
  const std::string header(kEventCsvHeader);
  for (const std::string good :
       {"signal", "dss_mixing", "bpm_background", "fake_dstar",
        "uncorrelated_dsl"}) {
    const std::string row =
        "\n0,0.5,0.5,0,0,0,1,1,1,1," + good + ",signal_region,1\n";
    CHECK(events_from_csv(header + row).size() == 1);
  }
  for (const std::string bad : {"Signal", "continuum", "", "sig nal"}) {
    const std::string row =
        "\n0,0.5,0.5,0,0,0,1,1,1,1," + bad + ",signal_region,1\n";
    CHECK_THROWS_AS(events_from_csv(header + row), std::invalid_argument);
  }
}

TEST_CASE("write_events / read_events file round trip") {
  const auto dir = temp_dir();
  const auto path = (dir / "events.csv").string();
  const auto records = random_records(200, 10);
  write_events(path, records);
  const auto back = read_events(path);
  CHECK(back.size() == records.size());
  CHECK(events_to_csv(back) == events_to_csv(records));
  fs::remove(path);
}

TEST_CASE("figure files satisfy their contracts") {
  const auto dir = temp_dir();
  const FigureFiles files = emit_figures(kBelle, dir.string());

  // photon curve: the 45-degree row carries S = 2 sqrt 2.
  const std::string photon = read_text(files.photon_chsh);
  std::istringstream in(photon);
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta_rad,s,sigma,bound");
  bool found45 = false;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string theta_s, s_s, sigma_s, bound_s;
    std::getline(row, theta_s, ',');
    std::getline(row, s_s, ',');
    std::getline(row, sigma_s, ',');
    std::getline(row, bound_s, ',');
    CHECK(bound_s == "2");
    const double theta = std::stod(theta_s);
    if (std::fabs(theta - 0.7853981633974483) < 2e-9) {
      found45 = true;
      CHECK(std::stod(s_s) == doctest::Approx(2.8284271).epsilon(1e-6));
    }
  }
  CHECK(found45);

  // damped curve never exceeds the bound.
  std::istringstream damped(read_text(files.meson_damped_chsh));
  std::getline(damped, line);
  while (std::getline(damped, line)) {
    const auto comma = line.find(',');
    const auto comma2 = line.find(',', comma + 1);
    const double s = std::stod(line.substr(comma + 1, comma2 - comma - 1));
    CHECK(s <= 2.0 + 1e-12);
  }

  // renormalized curve equals the photon curve row-by-row at theta = dm dt.
  std::istringstream renorm(read_text(files.meson_renorm_chsh));
  std::istringstream photon2(photon);
  std::string rline, pline;
  std::getline(renorm, rline);
  std::getline(photon2, pline);
  int rows = 0;
  while (std::getline(renorm, rline) && std::getline(photon2, pline)) {
    const auto rcomma = rline.find(',');
    const auto pcomma = pline.find(',');
    const double dt = std::stod(rline.substr(0, rcomma));
    const double theta = std::stod(pline.substr(0, pcomma));
    // x columns carry 9 significant digits, so the theta = dm*dt mapping is
    // only exact to the interchange precision.
    CHECK(std::fabs(theta - kBelle.delta_m * dt) < 5e-8);
    const auto rc2 = rline.find(',', rcomma + 1);
    const auto pc2 = pline.find(',', pcomma + 1);
    const double s_r = std::stod(rline.substr(rcomma + 1, rc2 - rcomma - 1));
    const double s_p = std::stod(pline.substr(pcomma + 1, pc2 - pcomma - 1));
    CHECK(std::fabs(s_r - s_p) < 1e-9);
    ++rows;
  }
  CHECK(rows == 181);
}

TEST_CASE("atomic write leaves no temporary behind") {
  const auto dir = temp_dir();
  const auto path = (dir / "doc.txt").string();
  atomic_write_text(path, "hello\n");
  CHECK(read_text(path) == "hello\n");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  fs::remove(path);
}

TEST_CASE("result documents match the published field list") {
  const auto events = random_records(5000, 12);
  RunConfig cfg;
  cfg.n_events = 5000;
  cfg.seed = 12;
  cfg.frac_signal = 0.6;
  cfg.frac_dss_mixing = 0.1;
  cfg.frac_bpm_background = 0.1;
  cfg.frac_fake_dstar = 0.1;
  cfg.frac_uncorrelated_dsl = 0.1;
  const AnalysisOutput out = run_analysis(events, cfg);
  const RunMetadata meta = RunMetadata::make(cfg);
  const json doc = make_result_document(out, meta);

  CHECK(undocumented_keys(doc, result_document_fields()).empty());
  CHECK(doc.at("result").at("s_value").is_number());
  CHECK(doc.at("metadata").at("rng_algorithm").get<std::string>() ==
        RandomStream::algorithm());

  // metadata inputs reproduce: same config, same events -> identical
  // documents apart from the timestamp.
  const AnalysisOutput out2 = run_analysis(events, cfg);
  RunMetadata meta2 = RunMetadata::make(cfg);
  meta2.timestamp_utc = meta.timestamp_utc;
  CHECK(make_result_document(out2, meta2) == doc);
}

TEST_CASE("all document kinds match their published field lists") {
  RunConfig cfg;
  cfg.n_events = 4000;
  cfg.seed = 9;
  cfg.frac_signal = 0.9;
  cfg.frac_fake_dstar = 0.1;
  auto events = generate_dataset(cfg.generator_config());
  events = apply_detector(events, cfg.detector, cfg.seed);
  assign_samples(events, cfg.detector, cfg.seed);
  const RunMetadata meta = RunMetadata::make(cfg);

  const SystematicsScan scan = scan_systematics(events, cfg);
  CHECK(undocumented_keys(make_systematics_document(scan, meta),
                          systematics_document_fields())
            .empty());

  const EnsembleSummary summary = run_ensemble(cfg, 4, 2);
  CHECK(undocumented_keys(make_ensemble_document(summary, meta),
                          ensemble_document_fields())
            .empty());

  const auto reports = run_lhv_tests(cfg.physics, 5000, 3, 1);
  CHECK(undocumented_keys(make_lhv_document(reports, meta),
                          lhv_document_fields())
            .empty());
}

TEST_CASE("document_to_csv flattens scalars") {
  const json doc = {{"a", {{"b", 1.5}}}, {"c", "x"}};
  const std::string csv = document_to_csv(doc);
  CHECK(csv.find("a.b,1.5") != std::string::npos);
  CHECK(csv.find("c,x") != std::string::npos);
}
