#include "bellmc/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bellmc/numfmt.hpp"
#include "bellmc/physics.hpp"
#include "bellmc/rng.hpp"
#include "bellmc/version.hpp"

namespace bellmc {

const char* kEventCsvHeader =
    "event_id,t_a_ps,t_b_ps,dt_true_ps,dz_reco_um,dt_reco_ps,flavor_a,"
    "flavor_b,tag_a,tag_b,category,sample,weight";

RunMetadata RunMetadata::make(const RunConfig& config) {
  RunMetadata meta;
  meta.version = kVersion;
  meta.config_hash = ::bellmc::config_hash(config);
  meta.seed = config.seed;
  meta.rng_algorithm = RandomStream::algorithm();
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  meta.timestamp_utc = buf;
  return meta;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string events_to_csv(const std::vector<EventRecord>& records) {
  std::ostringstream out;
  out << kEventCsvHeader << "\n";
  for (const EventRecord& ev : records) {
    out << ev.event_id << ',' << format_g9(ev.t_a) << ',' << format_g9(ev.t_b)
        << ',' << format_g9(ev.dt_true) << ',' << format_g9(ev.dz_reco) << ','
        << format_g9(ev.dt_reco) << ',' << ev.flavor_a << ',' << ev.flavor_b
        << ',' << ev.tag_a << ',' << ev.tag_b << ',' << to_string(ev.category)
        << ',' << to_string(ev.sample) << ',' << format_g9(ev.weight) << "\n";
  }
  return out.str();
}

void write_events(const std::string& path,
                  const std::vector<EventRecord>& records) {
  atomic_write_text(path, events_to_csv(records));
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

int parse_pm1(const std::string& text, const char* what, int row) {
  if (text == "1") return 1;
  if (text == "-1") return -1;
  throw std::invalid_argument("row " + std::to_string(row) + ": " + what +
                              " must be 1 or -1, got '" + text + "'");
}

}  // namespace

std::vector<EventRecord> events_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty event file (missing header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEventCsvHeader)
    throw std::invalid_argument("event file header mismatch");

  std::vector<EventRecord> records;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 13)
      throw std::invalid_argument("row " + std::to_string(row) + ": expected " +
                                  "13 fields, got " +
                                  std::to_string(fields.size()));
    try {
      EventRecord ev;
      ev.event_id = parse_u64(fields[0]);
      ev.t_a = parse_double(fields[1]);
      ev.t_b = parse_double(fields[2]);
      ev.dt_true = parse_double(fields[3]);
      ev.dz_reco = parse_double(fields[4]);
      ev.dt_reco = parse_double(fields[5]);
      ev.flavor_a = parse_pm1(fields[6], "flavor_a", row);
      ev.flavor_b = parse_pm1(fields[7], "flavor_b", row);
      ev.tag_a = parse_pm1(fields[8], "tag_a", row);
      ev.tag_b = parse_pm1(fields[9], "tag_b", row);
      ev.category = category_from_string(fields[10]);
      ev.sample = sample_from_string(fields[11]);
      ev.weight = parse_double(fields[12]);
      ev.dz_true = ev.dz_reco;  // true vertex separation is not serialized
      ev.validate();
      const double dt_check = std::fabs(ev.t_a - ev.t_b);
      if (std::fabs(ev.dt_true - dt_check) >
          1e-6 * std::max(1.0, dt_check))
        throw std::invalid_argument("dt_true inconsistent with |t_a - t_b|");
      records.push_back(ev);
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind("row ", 0) == 0) throw;
      throw std::invalid_argument("row " + std::to_string(row) + ": " + msg);
    }
  }
  return records;
}

std::vector<EventRecord> read_events(const std::string& path) {
  return events_from_csv(read_text(path));
}

namespace {

std::string curve_csv(const char* x_name,
                      const std::vector<std::array<double, 2>>& rows) {
  std::ostringstream out;
  out << x_name << ",s,sigma,bound\n";
  for (const auto& r : rows)
    out << format_g9(r[0]) << ',' << format_g9(r[1]) << ",0,2\n";
  return out.str();
}

}  // namespace

FigureFiles emit_figures(const PhysicsParams& params, const std::string& dir) {
  namespace fs = std::filesystem;
  params.validate();
  FigureFiles files;
  files.photon_chsh = (fs::path(dir) / "photon_chsh.csv").string();
  files.meson_damped_chsh = (fs::path(dir) / "meson_damped_chsh.csv").string();
  files.meson_renorm_chsh = (fs::path(dir) / "meson_renorm_chsh.csv").string();

  // Photon curve over theta in [0, pi/2].
  {
    std::vector<std::array<double, 2>> rows;
    const int n = 181;
    for (int i = 0; i < n; ++i) {
      const double theta = 0.5 * M_PI * i / (n - 1);
      rows.push_back({theta, chsh_s_photon(theta)});
    }
    atomic_write_text(files.photon_chsh, curve_csv("theta_rad", rows));
  }

  // Meson curves over dt in [0, dt_max] with theta = dm*dt covering the same
  // range, so the renormalized curve matches the photon rows one-to-one.
  const double dm = params.delta_m > 0.0 ? params.delta_m : 0.507;
  const double dt_max = 0.5 * M_PI / dm;
  const int n = 181;
  {
    // Damped correlation at t' = 0, in the E_R(0) = +1 sign convention.
    std::vector<std::array<double, 2>> rows;
    for (int i = 0; i < n; ++i) {
      const double dt = dt_max * i / (n - 1);
      rows.push_back({dt, -chsh_s_damped(0.0, dt, params)});
    }
    atomic_write_text(files.meson_damped_chsh, curve_csv("dt_ps", rows));
  }
  {
    std::vector<std::array<double, 2>> rows;
    for (int i = 0; i < n; ++i) {
      const double dt = dt_max * i / (n - 1);
      rows.push_back({dt, chsh_s_meson(dt, params)});
    }
    atomic_write_text(files.meson_renorm_chsh, curve_csv("dt_ps", rows));
  }
  return files;
}

void emit_analysis_figures(const std::vector<CorrelationEstimate>& bins,
                           const PhysicsParams& params,
                           const std::string& dir) {
  namespace fs = std::filesystem;
  std::ostringstream er;
  er << "dt_ps,e_r,sigma,bound\n";
  for (const auto& b : bins) {
    if (!b.defined()) continue;
    er << format_g9(b.dt_center) << ',' << format_g9(b.e_r) << ','
       << format_g9(b.sigma_stat) << ",2\n";
  }
  atomic_write_text((fs::path(dir) / "er_data.csv").string(), er.str());

  // Per-bin S: pair each bin with the bin containing 3*dt_center.
  std::ostringstream s;
  s << "dt_ps,s,sigma,bound\n";
  for (const auto& b : bins) {
    if (!b.defined()) continue;
    const double target = 3.0 * b.dt_center;
    const CorrelationEstimate* partner = nullptr;
    for (const auto& p : bins) {
      if (!p.defined()) continue;
      if (std::fabs(p.dt_center - target) <= p.dt_halfwidth + 1e-9) {
        partner = &p;
        break;
      }
    }
    if (!partner) continue;
    const double lo1 = b.dt_center - b.dt_halfwidth;
    const double hi1 = b.dt_center + b.dt_halfwidth;
    const double lo3 = partner->dt_center - partner->dt_halfwidth;
    const double hi3 = partner->dt_center + partner->dt_halfwidth;
    if (hi1 > lo3 && hi3 > lo1) continue;  // overlapping windows
    const double sv = 3.0 * b.e_r - partner->e_r;
    const double sig = std::sqrt(9.0 * b.sigma_stat * b.sigma_stat +
                                 partner->sigma_stat * partner->sigma_stat);
    s << format_g9(b.dt_center) << ',' << format_g9(sv) << ','
      << format_g9(sig) << ",2\n";
  }
  atomic_write_text((fs::path(dir) / "s_data.csv").string(), s.str());
  (void)params;
}

}  // namespace bellmc
