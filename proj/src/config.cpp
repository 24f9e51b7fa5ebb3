#include "bellmc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bellmc/numfmt.hpp"

namespace bellmc {

namespace {

struct KeySpec {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

// Range checks live here so every violation names its config key.
double pos_double(const std::string& v, const char* key) {
  const double x = parse_double(v);
  if (!(x > 0.0))
    throw std::invalid_argument(std::string("invalid value for ") + key +
                                ": must be > 0");
  return x;
}

double nonneg_double(const std::string& v, const char* key) {
  const double x = parse_double(v);
  if (x < 0.0)
    throw std::invalid_argument(std::string("invalid value for ") + key +
                                ": must be >= 0");
  return x;
}

double unit_double(const std::string& v, const char* key) {
  const double x = parse_double(v);
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument(std::string("invalid value for ") + key +
                                ": must be in [0, 1]");
  return x;
}

double mistag_double(const std::string& v, const char* key) {
  const double x = parse_double(v);
  if (x < 0.0 || x >= 0.5)
    throw std::invalid_argument(std::string("invalid value for ") + key +
                                ": must be in [0, 0.5)");
  return x;
}

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"physics.tau_b_ps",
       [](RunConfig& c, const std::string& v) {
         c.physics.tau_b = pos_double(v, "physics.tau_b_ps");
       },
       [](const RunConfig& c) { return format_g9(c.physics.tau_b); }},
      {"physics.delta_m_per_ps",
       [](RunConfig& c, const std::string& v) {
         c.physics.delta_m = nonneg_double(v, "physics.delta_m_per_ps");
       },
       [](const RunConfig& c) { return format_g9(c.physics.delta_m); }},
      {"physics.beta_gamma",
       [](RunConfig& c, const std::string& v) {
         c.physics.beta_gamma = pos_double(v, "physics.beta_gamma");
       },
       [](const RunConfig& c) { return format_g9(c.physics.beta_gamma); }},
      {"detector.beta_gamma",
       [](RunConfig& c, const std::string& v) {
         c.detector.beta_gamma = pos_double(v, "detector.beta_gamma");
       },
       [](const RunConfig& c) { return format_g9(c.detector.beta_gamma); }},
      {"detector.dz_sigma_um",
       [](RunConfig& c, const std::string& v) {
         c.detector.dz_sigma_um = nonneg_double(v, "detector.dz_sigma_um");
       },
       [](const RunConfig& c) { return format_g9(c.detector.dz_sigma_um); }},
      {"detector.omega_a",
       [](RunConfig& c, const std::string& v) {
         c.detector.omega_a = mistag_double(v, "detector.omega_a");
       },
       [](const RunConfig& c) { return format_g9(c.detector.omega_a); }},
      {"detector.omega_b",
       [](RunConfig& c, const std::string& v) {
         c.detector.omega_b = mistag_double(v, "detector.omega_b");
       },
       [](const RunConfig& c) { return format_g9(c.detector.omega_b); }},
      {"detector.efficiency",
       [](RunConfig& c, const std::string& v) {
         const double x = parse_double(v);
         if (!(x > 0.0) || x > 1.0)
           throw std::invalid_argument(
               "invalid value for detector.efficiency: must be in (0, 1]");
         c.detector.efficiency = x;
       },
       [](const RunConfig& c) { return format_g9(c.detector.efficiency); }},
      {"detector.sideband_scale",
       [](RunConfig& c, const std::string& v) {
         c.detector.sideband_scale = pos_double(v, "detector.sideband_scale");
       },
       [](const RunConfig& c) { return format_g9(c.detector.sideband_scale); }},
      {"detector.control_scale",
       [](RunConfig& c, const std::string& v) {
         c.detector.control_scale = pos_double(v, "detector.control_scale");
       },
       [](const RunConfig& c) { return format_g9(c.detector.control_scale); }},
      {"generator.n_events",
       [](RunConfig& c, const std::string& v) { c.n_events = parse_u64(v); },
       [](const RunConfig& c) { return std::to_string(c.n_events); }},
      {"generator.seed",
       [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"generator.frac_signal",
       [](RunConfig& c, const std::string& v) {
         c.frac_signal = unit_double(v, "generator.frac_signal");
       },
       [](const RunConfig& c) { return format_g9(c.frac_signal); }},
      {"generator.frac_dss_mixing",
       [](RunConfig& c, const std::string& v) {
         c.frac_dss_mixing = unit_double(v, "generator.frac_dss_mixing");
       },
       [](const RunConfig& c) { return format_g9(c.frac_dss_mixing); }},
      {"generator.frac_bpm_background",
       [](RunConfig& c, const std::string& v) {
         c.frac_bpm_background = unit_double(v, "generator.frac_bpm_background");
       },
       [](const RunConfig& c) { return format_g9(c.frac_bpm_background); }},
      {"generator.frac_fake_dstar",
       [](RunConfig& c, const std::string& v) {
         c.frac_fake_dstar = unit_double(v, "generator.frac_fake_dstar");
       },
       [](const RunConfig& c) { return format_g9(c.frac_fake_dstar); }},
      {"generator.frac_uncorrelated_dsl",
       [](RunConfig& c, const std::string& v) {
         c.frac_uncorrelated_dsl = unit_double(v, "generator.frac_uncorrelated_dsl");
       },
       [](const RunConfig& c) { return format_g9(c.frac_uncorrelated_dsl); }},
      {"analysis.bin_width_ps",
       [](RunConfig& c, const std::string& v) {
         c.analysis.bin_width_ps = pos_double(v, "analysis.bin_width_ps");
       },
       [](const RunConfig& c) { return format_g9(c.analysis.bin_width_ps); }},
      {"analysis.bin_max_ps",
       [](RunConfig& c, const std::string& v) {
         c.analysis.bin_max_ps = pos_double(v, "analysis.bin_max_ps");
       },
       [](const RunConfig& c) { return format_g9(c.analysis.bin_max_ps); }},
      {"analysis.window_center_ps",
       [](RunConfig& c, const std::string& v) {
         c.analysis.window_center_ps = pos_double(v, "analysis.window_center_ps");
       },
       [](const RunConfig& c) {
         return format_g9(c.analysis.window_center_ps);
       }},
      {"analysis.window_halfwidth_ps",
       [](RunConfig& c, const std::string& v) {
         c.analysis.window_halfwidth_ps =
             pos_double(v, "analysis.window_halfwidth_ps");
       },
       [](const RunConfig& c) {
         return format_g9(c.analysis.window_halfwidth_ps);
       }},
      {"analysis.window3_halfwidth_ps",
       [](RunConfig& c, const std::string& v) {
         // Negative keeps the proportional default (3x halfwidth).
         c.analysis.window3_halfwidth_ps = parse_double(v);
       },
       [](const RunConfig& c) {
         return format_g9(c.analysis.window3_halfwidth_ps);
       }},
      {"analysis.dilution_correction",
       [](RunConfig& c, const std::string& v) {
         c.analysis.dilution_correction = parse_bool(v);
       },
       [](const RunConfig& c) {
         return c.analysis.dilution_correction ? std::string("true")
                                               : std::string("false");
       }},
      {"analysis.sigma_syst",
       [](RunConfig& c, const std::string& v) {
         c.analysis.sigma_syst = nonneg_double(v, "analysis.sigma_syst");
       },
       [](const RunConfig& c) { return format_g9(c.analysis.sigma_syst); }},
      {"analysis.significance_threshold",
       [](RunConfig& c, const std::string& v) {
         c.analysis.significance_threshold = parse_double(v);
       },
       [](const RunConfig& c) {
         return format_g9(c.analysis.significance_threshold);
       }},
      {"analysis.systematics",
       [](RunConfig& c, const std::string& v) { c.analysis.systematics = v; },
       [](const RunConfig& c) { return c.analysis.systematics; }},
      {"ensemble.n_experiments",
       [](RunConfig& c, const std::string& v) {
         c.ensemble.n_experiments = parse_u64(v);
       },
       [](const RunConfig& c) {
         return std::to_string(c.ensemble.n_experiments);
       }},
      {"ensemble.n_threads",
       [](RunConfig& c, const std::string& v) {
         const double x = parse_double(v);
         if (x < 1 || x != std::floor(x))
           throw std::invalid_argument("invalid value for ensemble.n_threads");
         c.ensemble.n_threads = static_cast<int>(x);
       },
       [](const RunConfig& c) { return std::to_string(c.ensemble.n_threads); }},
      {"output.dir",
       [](RunConfig& c, const std::string& v) { c.output.dir = v; },
       [](const RunConfig& c) { return c.output.dir; }},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Exact name match first, then a unique dotted-suffix match.
const KeySpec* resolve_key(const std::string& key, std::string& error) {
  const KeySpec* found = nullptr;
  for (const auto& spec : key_table())
    if (key == spec.name) return &spec;
  int matches = 0;
  for (const auto& spec : key_table()) {
    const std::string full = spec.name;
    if (full.size() > key.size() &&
        full.compare(full.size() - key.size(), key.size(), key) == 0 &&
        full[full.size() - key.size() - 1] == '.') {
      ++matches;
      found = &spec;
    }
  }
  if (matches == 1) return found;
  error = matches == 0 ? "unknown key '" + key + "'"
                       : "ambiguous key '" + key + "'";
  return nullptr;
}

}  // namespace

std::vector<double> AnalysisSettings::bin_edges() const {
  std::vector<double> edges;
  for (double e = 0.0; e < bin_max_ps - 1e-9; e += bin_width_ps)
    edges.push_back(e);
  edges.push_back(bin_max_ps);
  return edges;
}

void AnalysisSettings::validate() const {
  if (!(bin_width_ps > 0.0))
    throw std::invalid_argument("analysis.bin_width_ps must be > 0");
  if (!(bin_max_ps > bin_width_ps))
    throw std::invalid_argument("analysis.bin_max_ps must exceed the width");
  if (!(window_center_ps > 0.0) || !(window_halfwidth_ps > 0.0))
    throw std::invalid_argument("analysis window must be positive");
  const double w3 = effective_window3_halfwidth();
  // The dt and 3dt windows must not overlap (independent-bin errors).
  if (window_center_ps + window_halfwidth_ps >
      3.0 * window_center_ps - w3)
    throw std::invalid_argument(
        "analysis windows overlap: window_halfwidth_ps/window3_halfwidth_ps "
        "too large for window_center_ps");
  if (sigma_syst < 0.0)
    throw std::invalid_argument("analysis.sigma_syst must be >= 0");
}

void EnsembleSettings::validate() const {
  if (n_threads < 1)
    throw std::invalid_argument("ensemble.n_threads must be >= 1");
}

GeneratorConfig RunConfig::generator_config() const {
  GeneratorConfig gen;
  gen.n_events = n_events;
  gen.seed = seed;
  gen.params = physics;
  gen.set_fraction(Category::kSignal, frac_signal);
  gen.set_fraction(Category::kDssMixing, frac_dss_mixing);
  gen.set_fraction(Category::kBpmBackground, frac_bpm_background);
  gen.set_fraction(Category::kFakeDstar, frac_fake_dstar);
  gen.set_fraction(Category::kUncorrelatedDsl, frac_uncorrelated_dsl);
  return gen;
}

void RunConfig::validate() const {
  physics.validate();
  detector.validate();
  generator_config().validate();
  analysis.validate();
  ensemble.validate();
}

ConfigParseResult parse_config(const std::string& text) {
  ConfigParseResult result;
  std::vector<bool> seen(key_table().size(), false);

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config syntax error at line " +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config syntax error at line " +
                                  std::to_string(line_no) + ": empty key");
    std::string err;
    const KeySpec* spec = resolve_key(key, err);
    if (!spec)
      throw std::invalid_argument("config error at line " +
                                  std::to_string(line_no) + ": " + err);
    try {
      spec->set(result.config, value);
    } catch (const std::exception& e) {
      throw std::invalid_argument("config error at line " +
                                  std::to_string(line_no) + " (" + spec->name +
                                  "): " + e.what());
    }
    seen[spec - key_table().data()] = true;
  }

  const RunConfig defaults;
  for (std::size_t i = 0; i < key_table().size(); ++i)
    if (!seen[i])
      result.notices.push_back(std::string(key_table()[i].name) +
                               " defaulted to " +
                               key_table()[i].get(defaults));

  result.config.validate();
  return result;
}

ConfigParseResult load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& spec : key_table())
    out << spec.name << " = " << spec.get(config) << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace bellmc
