#include "bellmc/documents.hpp"

#include <sstream>

#include "bellmc/numfmt.hpp"

namespace bellmc {

namespace {

json flags_to_json(unsigned flags) {
  json arr = json::array();
  if (flags & estimate_flags::kUndefined) arr.push_back("undefined");
  if (flags & estimate_flags::kDegenerate) arr.push_back("degenerate");
  if (flags & estimate_flags::kClamped) arr.push_back("clamped");
  if (flags & estimate_flags::kDilutionCorrected)
    arr.push_back("dilution_corrected");
  return arr;
}

json estimate_to_json(const CorrelationEstimate& est) {
  return json{{"dt_center_ps", est.dt_center},
              {"dt_halfwidth_ps", est.dt_halfwidth},
              {"e_r", est.e_r},
              {"sigma_stat", est.sigma_stat},
              {"n_effective", est.n_effective},
              {"flags", flags_to_json(est.flags)}};
}

void collect_keys(const json& node, const std::string& prefix,
                  std::vector<std::string>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string path =
          prefix.empty() ? it.key() : prefix + "." + it.key();
      out.push_back(path);
      collect_keys(it.value(), path, out);
    }
  } else if (node.is_array()) {
    for (const auto& elem : node) collect_keys(elem, prefix + "[]", out);
  }
}

}  // namespace

json make_metadata_json(const RunMetadata& meta) {
  return json{{"version", meta.version},
              {"config_hash", meta.config_hash},
              {"seed", meta.seed},
              {"rng_algorithm", meta.rng_algorithm},
              {"timestamp_utc", meta.timestamp_utc}};
}

json make_result_document(const AnalysisOutput& out, const RunMetadata& meta) {
  json bins = json::array();
  for (const auto& b : out.bins) bins.push_back(estimate_to_json(b));
  return json{
      {"result",
       {{"dt_center_ps", out.result.dt_center},
        {"dt_halfwidth_ps", out.result.dt_halfwidth},
        {"s_value", out.result.s_value},
        {"sigma_stat", out.result.sigma_stat},
        {"sigma_syst", out.result.sigma_syst},
        {"significance", out.significance_value},
        {"clamped_bins_present", out.any_clamped}}},
      {"windows",
       {{"e_r_dt", estimate_to_json(out.e_at_dt)},
        {"e_r_3dt", estimate_to_json(out.e_at_3dt)}}},
      {"bins", bins},
      {"metadata", make_metadata_json(meta)}};
}

json make_systematics_document(const SystematicsScan& scan,
                               const RunMetadata& meta) {
  json sources = json::array();
  for (const auto& s : scan.budget.sources)
    sources.push_back(json{{"name", s.source}, {"shift", s.shift}});
  return json{{"s_baseline", scan.s_baseline},
              {"sources", sources},
              {"total", scan.budget.total()},
              {"metadata", make_metadata_json(meta)}};
}

json make_ensemble_document(const EnsembleSummary& summary,
                            const RunMetadata& meta) {
  return json{{"n_experiments", summary.n_experiments},
              {"s_analytic", summary.s_analytic},
              {"s_mean", summary.s_mean},
              {"s_stddev", summary.s_stddev},
              {"sigma_stat_mean", summary.sigma_stat_mean},
              {"pull_mean", summary.pull_mean},
              {"pull_stddev", summary.pull_stddev},
              {"significance_threshold", summary.significance_threshold},
              {"frac_significant", summary.frac_significant},
              {"metadata", make_metadata_json(meta)}};
}

json make_lhv_document(const std::vector<LhvStrategyReport>& reports,
                       const RunMetadata& meta) {
  json strategies = json::array();
  for (const auto& rep : reports) {
    json points = json::array();
    for (const auto& p : rep.points)
      points.push_back(
          json{{"dt_ps", p.dt}, {"s", p.s}, {"sigma", p.sigma}});
    strategies.push_back(json{{"name", rep.name},
                              {"max_s", rep.max_point.s},
                              {"sigma_at_max", rep.max_point.sigma},
                              {"dt_at_max_ps", rep.max_point.dt},
                              {"points", points}});
  }
  return json{{"strategies", strategies},
              {"metadata", make_metadata_json(meta)}};
}

namespace {

std::set<std::string> with_metadata(std::set<std::string> fields) {
  for (const char* f :
       {"metadata", "metadata.version", "metadata.config_hash",
        "metadata.seed", "metadata.rng_algorithm", "metadata.timestamp_utc"})
    fields.insert(f);
  return fields;
}

std::set<std::string> estimate_fields(const std::string& prefix) {
  return {prefix,
          prefix + ".dt_center_ps",
          prefix + ".dt_halfwidth_ps",
          prefix + ".e_r",
          prefix + ".sigma_stat",
          prefix + ".n_effective",
          prefix + ".flags"};
}

}  // namespace

const std::set<std::string>& result_document_fields() {
  static const std::set<std::string> fields = [] {
    std::set<std::string> f = {
        "result",
        "result.dt_center_ps",
        "result.dt_halfwidth_ps",
        "result.s_value",
        "result.sigma_stat",
        "result.sigma_syst",
        "result.significance",
        "result.clamped_bins_present",
        "windows",
        "bins",
    };
    for (const auto& e : estimate_fields("windows.e_r_dt")) f.insert(e);
    for (const auto& e : estimate_fields("windows.e_r_3dt")) f.insert(e);
    for (const auto& e : estimate_fields("bins[]")) f.insert(e);
    f.erase("bins[]");
    return with_metadata(f);
  }();
  return fields;
}

const std::set<std::string>& systematics_document_fields() {
  static const std::set<std::string> fields = with_metadata(
      {"s_baseline", "sources", "sources[].name", "sources[].shift", "total"});
  return fields;
}

const std::set<std::string>& ensemble_document_fields() {
  static const std::set<std::string> fields = with_metadata(
      {"n_experiments", "s_analytic", "s_mean", "s_stddev", "sigma_stat_mean",
       "pull_mean", "pull_stddev", "significance_threshold",
       "frac_significant"});
  return fields;
}

const std::set<std::string>& lhv_document_fields() {
  static const std::set<std::string> fields = with_metadata(
      {"strategies", "strategies[].name", "strategies[].max_s",
       "strategies[].sigma_at_max", "strategies[].dt_at_max_ps",
       "strategies[].points", "strategies[].points[].dt_ps",
       "strategies[].points[].s", "strategies[].points[].sigma"});
  return fields;
}

std::vector<std::string> undocumented_keys(
    const json& doc, const std::set<std::string>& fields) {
  std::vector<std::string> keys;
  collect_keys(doc, "", keys);
  std::vector<std::string> extra;
  for (const auto& k : keys)
    if (fields.find(k) == fields.end()) extra.push_back(k);
  return extra;
}

std::string document_to_csv(const json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(),
                 prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          int idx = 0;
          for (const auto& elem : node)
            walk(elem, prefix + "[" + std::to_string(idx++) + "]");
        } else if (node.is_number_float()) {
          out << prefix << ',' << format_g9(node.get<double>()) << "\n";
        } else if (node.is_string()) {
          out << prefix << ',' << node.get<std::string>() << "\n";
        } else {
          out << prefix << ',' << node.dump() << "\n";
        }
      };
  walk(doc, "");
  return out.str();
}

}  // namespace bellmc
