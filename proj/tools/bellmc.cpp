// bellmc: Bell-CHSH test toolkit for oscillating neutral-meson pairs.
//
// Subcommands: predict, generate, analyze, scan-systematics, ensemble,
// lhv-test, report.  Every error exits nonzero with a one-line classed
// message on stderr: "error: <class>: <detail>".

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellmc/compare.hpp"
#include "bellmc/config.hpp"
#include "bellmc/detector.hpp"
#include "bellmc/documents.hpp"
#include "bellmc/ensemble.hpp"
#include "bellmc/generator.hpp"
#include "bellmc/io.hpp"
#include "bellmc/lhv_harness.hpp"
#include "bellmc/pipeline.hpp"
#include "bellmc/systematics.hpp"
#include "bellmc/version.hpp"

namespace fs = std::filesystem;
using bellmc::json;

namespace {

struct CliError {
  std::string cls;
  std::string message;
};

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string events_path;
  std::string format = "json";
};

bellmc::RunConfig load_run_config(const CommonOpts& opts) {
  bellmc::ConfigParseResult parsed;
  try {
    if (opts.config_path.empty()) {
      parsed = bellmc::parse_config("");
    } else {
      parsed = bellmc::load_config(opts.config_path);
    }
  } catch (const std::exception& e) {
    throw CliError{"config_error", e.what()};
  }
  for (const auto& notice : parsed.notices)
    std::cerr << "notice: " << notice << "\n";
  if (opts.seed) parsed.config.seed = *opts.seed;
  if (opts.out_dir != ".") parsed.config.output.dir = opts.out_dir;
  return parsed.config;
}

std::string out_path(const bellmc::RunConfig& config,
                     const std::string& name) {
  return (fs::path(config.output.dir) / name).string();
}

void write_document(const bellmc::RunConfig& config, const json& doc,
                    const std::string& stem, const std::string& format) {
  try {
    bellmc::atomic_write_text(out_path(config, stem + ".json"), doc.dump(2) + "\n");
    if (format == "csv")
      bellmc::atomic_write_text(out_path(config, stem + ".csv"),
                                bellmc::document_to_csv(doc));
  } catch (const std::exception& e) {
    throw CliError{"io_error", e.what()};
  }
}

std::vector<bellmc::EventRecord> load_events(const std::string& path) {
  if (path.empty())
    throw CliError{"usage_error", "--events PATH is required"};
  try {
    return bellmc::read_events(path);
  } catch (const std::exception& e) {
    throw CliError{"io_error", std::string(e.what()) + " (" + path + ")"};
  }
}

int cmd_predict(const CommonOpts& opts) {
  const bellmc::RunConfig config = load_run_config(opts);
  try {
    const auto files =
        bellmc::emit_figures(config.physics, config.output.dir);
    std::cout << "wrote " << files.photon_chsh << "\n"
              << "wrote " << files.meson_damped_chsh << "\n"
              << "wrote " << files.meson_renorm_chsh << "\n";
  } catch (const std::exception& e) {
    throw CliError{"io_error", e.what()};
  }
  return 0;
}

int cmd_generate(const CommonOpts& opts) {
  const bellmc::RunConfig config = load_run_config(opts);
  std::vector<bellmc::EventRecord> events;
  try {
    events = bellmc::generate_dataset(config.generator_config());
    events = bellmc::apply_detector(events, config.detector, config.seed);
    bellmc::assign_samples(events, config.detector, config.seed);
  } catch (const std::exception& e) {
    throw CliError{"analysis_error", e.what()};
  }
  const std::string path = opts.events_path.empty()
                               ? out_path(config, "events.csv")
                               : opts.events_path;
  try {
    bellmc::write_events(path, events);
    const bellmc::RunMetadata meta = bellmc::RunMetadata::make(config);
    json sidecar{{"metadata", bellmc::make_metadata_json(meta)},
                 {"n_events_written", events.size()},
                 {"config", bellmc::serialize_config(config)}};
    bellmc::atomic_write_text(path + ".meta.json", sidecar.dump(2) + "\n");
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{"io_error", e.what()};
  }
  std::cout << "wrote " << path << " (" << events.size() << " events)\n";
  return 0;
}

int cmd_analyze(const CommonOpts& opts) {
  const bellmc::RunConfig config = load_run_config(opts);
  const auto events = load_events(opts.events_path);
  bellmc::AnalysisOutput out;
  try {
    out = bellmc::run_analysis(events, config);
  } catch (const std::exception& e) {
    throw CliError{"analysis_error", e.what()};
  }
  const bellmc::RunMetadata meta = bellmc::RunMetadata::make(config);
  write_document(config, bellmc::make_result_document(out, meta), "result",
                 opts.format);
  try {
    bellmc::emit_analysis_figures(out.bins, config.physics, config.output.dir);
  } catch (const std::exception& e) {
    throw CliError{"io_error", e.what()};
  }
  std::cout << "S(" << out.result.dt_center << " +- "
            << out.result.dt_halfwidth << " ps) = " << out.result.s_value
            << " +- " << out.result.sigma_stat << " (stat) +- "
            << out.result.sigma_syst
            << " (syst), significance = " << out.significance_value << "\n";
  return 0;
}

int cmd_scan_systematics(const CommonOpts& opts) {
  const bellmc::RunConfig config = load_run_config(opts);
  const auto events = load_events(opts.events_path);
  bellmc::SystematicsScan scan;
  try {
    scan = bellmc::scan_systematics(events, config);
  } catch (const std::exception& e) {
    throw CliError{"analysis_error", e.what()};
  }
  const bellmc::RunMetadata meta = bellmc::RunMetadata::make(config);
  write_document(config, bellmc::make_systematics_document(scan, meta),
                 "systematics", opts.format);
  std::cout << "S_baseline = " << scan.s_baseline
            << ", total systematic = " << scan.budget.total() << "\n";
  return 0;
}

int cmd_ensemble(const CommonOpts& opts,
                 std::optional<std::uint64_t> n_experiments,
                 std::optional<int> n_threads) {
  const bellmc::RunConfig config = load_run_config(opts);
  const std::uint64_t n =
      n_experiments ? *n_experiments : config.ensemble.n_experiments;
  const int threads = n_threads ? *n_threads : config.ensemble.n_threads;
  bellmc::EnsembleSummary summary;
  try {
    summary = bellmc::run_ensemble(config, n, threads);
  } catch (const std::exception& e) {
    throw CliError{"analysis_error", e.what()};
  }
  const bellmc::RunMetadata meta = bellmc::RunMetadata::make(config);
  write_document(config, bellmc::make_ensemble_document(summary, meta),
                 "ensemble", opts.format);
  std::cout << "experiments = " << summary.n_experiments
            << ", mean S = " << summary.s_mean
            << ", mean sigma_stat = " << summary.sigma_stat_mean
            << ", frac >= " << summary.significance_threshold
            << " sigma: " << summary.frac_significant << "\n";
  return 0;
}

int cmd_lhv_test(const CommonOpts& opts, std::uint64_t n_events,
                 int n_random) {
  const bellmc::RunConfig config = load_run_config(opts);
  std::vector<bellmc::LhvStrategyReport> reports;
  try {
    reports =
        bellmc::run_lhv_tests(config.physics, n_events, config.seed, n_random);
  } catch (const std::exception& e) {
    throw CliError{"analysis_error", e.what()};
  }
  const bellmc::RunMetadata meta = bellmc::RunMetadata::make(config);
  write_document(config, bellmc::make_lhv_document(reports, meta), "lhv",
                 opts.format);
  for (const auto& rep : reports)
    std::cout << rep.name << ": max S = " << rep.max_point.s << " +- "
              << rep.max_point.sigma << " at dt = " << rep.max_point.dt
              << " ps\n";
  std::cout << "classical bound: S <= 2\n";
  return 0;
}

json try_load_json(const std::string& path) {
  if (!fs::exists(path)) return json();
  try {
    return json::parse(bellmc::read_text(path));
  } catch (const std::exception& e) {
    throw CliError{"io_error", std::string(e.what()) + " (" + path + ")"};
  }
}

int cmd_report(const CommonOpts& opts) {
  const fs::path dir(opts.out_dir);
  bool anything = false;

  const json result = try_load_json((dir / "result.json").string());
  if (!result.is_null()) {
    anything = true;
    const auto& r = result.at("result");
    std::cout << "== CHSH result ==\n";
    std::cout << "  window          dt = " << r.at("dt_center_ps").get<double>()
              << " +- " << r.at("dt_halfwidth_ps").get<double>() << " ps\n";
    std::cout << "  S               " << r.at("s_value").get<double>() << "\n";
    std::cout << "  sigma_stat      " << r.at("sigma_stat").get<double>()
              << "\n";
    std::cout << "  sigma_syst      " << r.at("sigma_syst").get<double>()
              << "\n";
    std::cout << "  significance    " << r.at("significance").get<double>()
              << " sigma vs S = 2\n";
  }
  const json syst = try_load_json((dir / "systematics.json").string());
  if (!syst.is_null()) {
    anything = true;
    std::cout << "== Systematics budget ==\n";
    for (const auto& s : syst.at("sources"))
      std::cout << "  " << s.at("name").get<std::string>() << "  "
                << s.at("shift").get<double>() << "\n";
    std::cout << "  total (quadrature)  " << syst.at("total").get<double>()
              << "\n";
  }
  const json ens = try_load_json((dir / "ensemble.json").string());
  if (!ens.is_null()) {
    anything = true;
    std::cout << "== Pseudo-experiment ensemble ==\n";
    std::cout << "  experiments     "
              << ens.at("n_experiments").get<std::uint64_t>() << "\n";
    std::cout << "  mean S          " << ens.at("s_mean").get<double>()
              << " +- " << ens.at("s_stddev").get<double>() << "\n";
    std::cout << "  mean sigma_stat " << ens.at("sigma_stat_mean").get<double>()
              << "\n";
    std::cout << "  frac >= " << ens.at("significance_threshold").get<double>()
              << " sigma: " << ens.at("frac_significant").get<double>() << "\n";
  }
  const json lhv = try_load_json((dir / "lhv.json").string());
  if (!lhv.is_null()) {
    anything = true;
    std::cout << "== LHV strategies (bound: S <= 2) ==\n";
    for (const auto& s : lhv.at("strategies"))
      std::cout << "  " << s.at("name").get<std::string>() << "  max S = "
                << s.at("max_s").get<double>() << " +- "
                << s.at("sigma_at_max").get<double>() << "\n";
  }
  if (!anything)
    throw CliError{"usage_error",
                   "no result.json/systematics.json/ensemble.json/lhv.json "
                   "under --out directory"};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-CHSH test toolkit for oscillating neutral-meson pairs"};
  app.set_version_flag("--version", bellmc::kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  std::optional<std::uint64_t> n_experiments;
  std::optional<int> n_threads;
  std::uint64_t lhv_events = 100000;
  int lhv_random = 5;

  auto add_common = [&](CLI::App* sub, bool with_events) {
    sub->add_option("--config", opts.config_path, "config file path");
    sub->add_option("--seed", opts.seed, "seed override");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--format", opts.format, "result document format")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_events)
      sub->add_option("--events", opts.events_path, "event CSV path");
  };

  CLI::App* predict = app.add_subcommand("predict", "write analytic curves");
  add_common(predict, false);
  CLI::App* generate =
      app.add_subcommand("generate", "generate an event file");
  add_common(generate, true);
  CLI::App* analyze = app.add_subcommand("analyze", "run the measurement");
  add_common(analyze, true);
  CLI::App* scan = app.add_subcommand("scan-systematics",
                                      "rerun the pipeline under variations");
  add_common(scan, true);
  CLI::App* ensemble =
      app.add_subcommand("ensemble", "run pseudo-experiments");
  add_common(ensemble, false);
  ensemble->add_option("--experiments", n_experiments,
                       "number of pseudo-experiments");
  ensemble->add_option("--threads", n_threads, "worker threads");
  CLI::App* lhv = app.add_subcommand("lhv-test",
                                     "exercise local-hidden-variable bounds");
  add_common(lhv, false);
  lhv->add_option("--n-events", lhv_events, "events per strategy");
  lhv->add_option("--random", lhv_random, "number of randomized strategies");
  CLI::App* report =
      app.add_subcommand("report", "plain-text summary of result documents");
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage_error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (predict->parsed()) return cmd_predict(opts);
    if (generate->parsed()) return cmd_generate(opts);
    if (analyze->parsed()) return cmd_analyze(opts);
    if (scan->parsed()) return cmd_scan_systematics(opts);
    if (ensemble->parsed())
      return cmd_ensemble(opts, n_experiments, n_threads);
    if (lhv->parsed()) return cmd_lhv_test(opts, lhv_events, lhv_random);
    if (report->parsed()) return cmd_report(opts);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.cls << ": " << e.message << "\n";
    return e.cls == "usage_error" ? 2 : e.cls == "config_error" ? 3
                                    : e.cls == "io_error"       ? 4
                                                                : 5;
  } catch (const std::exception& e) {
    std::cerr << "error: internal_error: " << e.what() << "\n";
    return 10;
  }
  return 0;
}
