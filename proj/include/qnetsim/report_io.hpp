#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qnetsim/error.hpp"
#include "qnetsim/simulation.hpp"

namespace qnetsim {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical replay
  if (!out) fail(errc::io_error, "cannot open for writing: " + path.string());
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Directory token for a sweep value: integral values print without a decimal
// point (sigma_10), others in shortest form (exponent_-0.75).
inline std::string value_token(double v) {
  const double r = std::llround(v);
  if (std::fabs(v - r) < 1e-9 && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", std::llround(v));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

inline void write_rank_frequency_csv(const std::filesystem::path& path,
                                     const std::vector<std::pair<long long, long long>>&
                                         rows) {
  auto out = detail::open_out(path);
  out << "rank,frequency\n";
  for (const auto& [rank, f] : rows) out << rank << ',' << f << '\n';
}

inline void write_ent_growth_csv(const std::filesystem::path& path,
                                 const MetricsSeries& m) {
  auto out = detail::open_out(path);
  out << "k,e_total\n";
  for (std::size_t i = 0; i < m.steps.size(); ++i)
    out << m.steps[i] << ',' << m.e_total[i] << '\n';
}

inline void write_degree_growth_csv(const std::filesystem::path& path,
                                    const DegreeGrowthReport& report) {
  auto out = detail::open_out(path);
  out << "node,delta,initial,final\n";
  for (const auto& row : report.per_node)
    out << row.node << ',' << row.delta << ',' << row.initial_degree << ','
        << row.final_degree << '\n';
}

inline void write_max_freq_csv(const std::filesystem::path& path,
                               const MetricsSeries& m) {
  auto out = detail::open_out(path);
  out << "k,max_virtual,max_physical\n";
  for (std::size_t i = 0; i < m.steps.size(); ++i)
    out << m.steps[i] << ',' << m.max_virtual_freq[i] << ',' << m.max_physical_freq[i]
        << '\n';
}

inline void write_node_degree_csv(const std::filesystem::path& path,
                                  const std::vector<int>& degrees) {
  auto out = detail::open_out(path);
  out << "node,degree\n";
  for (std::size_t j = 1; j < degrees.size(); ++j) out << j << ',' << degrees[j] << '\n';
}

inline void write_node_touches_csv(const std::filesystem::path& path,
                                   const std::vector<long long>& touches) {
  auto out = detail::open_out(path);
  out << "node,degree\n";
  for (std::size_t j = 1; j < touches.size(); ++j) out << j << ',' << touches[j] << '\n';
}

inline nlohmann::json fit_to_json(const NamedFit& nf) {
  nlohmann::json params;
  if (nf.fit.model == FitResult::Model::power_law) {
    params = {{"A", nf.fit.amplitude}, {"B", nf.fit.exponent}};
  } else {
    params = {{"C", nf.fit.ceiling},
              {"D", nf.fit.depth},
              {"E_rate", nf.fit.rate},
              {"k0", nf.fit.onset}};
  }
  return nlohmann::json{
      {"series_name", nf.series_name},
      {"model",
       nf.fit.model == FitResult::Model::power_law ? "powerlaw" : "monomolecular"},
      {"params", params},
      {"r_squared", nf.fit.r_squared},
      {"rmse", nf.fit.rmse},
      {"n_points", nf.fit.n_points},
      {"excluded_points", nf.fit.excluded_points},
      {"converged", nf.fit.converged}};
}

inline void write_fits_json(const std::filesystem::path& path,
                            const std::vector<NamedFit>& fits) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& nf : fits) arr.push_back(fit_to_json(nf));
  auto out = detail::open_out(path);
  out << arr.dump(2) << '\n';
}

inline nlohmann::json event_to_json(const Event& ev) {
  nlohmann::json obj{{"step", ev.step}, {"type", event_type_name(ev.type)}};
  switch (ev.type) {
    case EventType::edge_created:
      obj["u"] = ev.u;
      obj["v"] = ev.v;
      obj["edge_id"] = ev.edge_id;
      obj["kind"] = edge_kind_name(ev.kind);
      break;
    case EventType::swap:
      obj["u"] = ev.u;
      obj["v"] = ev.v;
      obj["edge_id"] = ev.edge_id;
      obj["kind"] = edge_kind_name(ev.kind);
      obj["via"] = ev.via;
      obj["consumed_first"] = ev.consumed_first;
      obj["consumed_second"] = ev.consumed_second;
      break;
    case EventType::connection_completed:
      obj["u"] = ev.u;
      obj["v"] = ev.v;
      obj["edges_created"] = ev.edges_created;
      obj["swaps"] = ev.swaps;
      break;
    case EventType::connection_failed:
      obj["u"] = ev.u;
      obj["v"] = ev.v;
      break;
  }
  return obj;
}

inline void write_events_jsonl(const std::filesystem::path& path, const EventLog& log) {
  auto out = detail::open_out(path);
  for (const Event& ev : log) out << event_to_json(ev).dump() << '\n';
}

// Write the full artifact set for one run: eight CSV files plus fits.json and
// events.jsonl.
inline void write_run_outputs(const SimulationReport& report,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(errc::io_error, "cannot create output dir " + dir.string());

  write_rank_frequency_csv(dir / "edge_freq_sorted_all.csv", report.freq_all);
  write_rank_frequency_csv(dir / "edge_freq_sorted_phys.csv", report.freq_physical);
  write_rank_frequency_csv(dir / "edge_freq_sorted_virt.csv", report.freq_virtual);
  write_ent_growth_csv(dir / "ent_growth.csv", report.metrics);
  write_degree_growth_csv(dir / "degree_growth.csv", report.degree_growth);
  write_max_freq_csv(dir / "max_freq.csv", report.metrics);
  write_node_degree_csv(dir / "node_degrees_entangled.csv",
                        report.final_entangled_degrees);
  write_node_touches_csv(dir / "node_degrees_connection.csv",
                         report.metrics.connection_touches);
  write_fits_json(dir / "fits.json", report.fits);
  write_events_jsonl(dir / "events.jsonl", report.events);
}

inline SimulationReport run_and_write(const SimConfig& cfg) {
  SimulationReport report = run_simulation(cfg);
  write_run_outputs(report, cfg.output_dir);
  return report;
}

// ---- parameter sweeps -----------------------------------------------------

struct SweepRow {
  std::string param;
  double value = 0.0;
  std::uint64_t seed = 0;
  long long final_e_total = 0;
  long long completed = 0;
  long long failed = 0;
  double top20_mean_all = 0.0;
};

inline SimConfig apply_sweep_value(SimConfig cfg, const std::string& param, double v) {
  if (param == "sigma") {
    if (cfg.distribution.kind != DistributionKind::gaussian)
      fail(errc::validation_error, "sigma sweep requires a gaussian distribution");
    cfg.distribution.sigma = v;
  } else if (param == "exponent") {
    if (cfg.distribution.kind != DistributionKind::power_law)
      fail(errc::validation_error, "exponent sweep requires a powerlaw distribution");
    cfg.distribution.exponent = v;
  } else if (param == "connections") {
    const long long m = std::llround(v);
    if (std::fabs(v - static_cast<double>(m)) > 1e-9)
      fail(errc::validation_error, "connections sweep values must be integers");
    cfg.m_connections = m;
  } else if (param == "rho") {
    cfg.proactive_fraction = v;
  } else {
    fail(errc::validation_error,
         "sweep param must be sigma, exponent, connections or rho, got \"" + param +
             "\"");
  }
  return cfg;
}

inline double top_mean_from(const std::vector<std::pair<long long, long long>>& freqs,
                            std::size_t k) {
  if (freqs.empty()) return 0.0;
  const std::size_t take = std::min(k, freqs.size());
  long long sum = 0;
  for (std::size_t i = 0; i < take; ++i) sum += freqs[i].second;
  return static_cast<double>(sum) / static_cast<double>(take);
}

// Run one simulation per value under <root>/<param>_<value>/ with seed
// base+index, then write <root>/<param>_comparison.csv.
inline std::vector<SweepRow> run_sweep(const SimConfig& base, const std::string& param,
                                       const std::vector<double>& values,
                                       const std::filesystem::path& root) {
  if (values.empty()) fail(errc::invalid_parameter, "sweep needs at least one value");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig cfg = apply_sweep_value(base, param, values[i]);
    cfg.seed = base.seed + i;
    const std::filesystem::path dir =
        root / (param + "_" + detail::value_token(values[i]));
    cfg.output_dir = dir.string();
    const SimulationReport report = run_and_write(cfg);
    SweepRow row;
    row.param = param;
    row.value = values[i];
    row.seed = cfg.seed;
    row.final_e_total = report.metrics.e_total.empty() ? 0 : report.metrics.e_total.back();
    row.completed = report.completed;
    row.failed = report.failed;
    row.top20_mean_all = top_mean_from(report.freq_all, 20);
    rows.push_back(row);
  }
  auto out = detail::open_out(root / (param + "_comparison.csv"));
  out << "param,value,seed,final_e_total,completed,failed,top20_mean_all\n";
  for (const auto& row : rows)
    out << row.param << ',' << detail::format_double(row.value) << ',' << row.seed << ','
        << row.final_e_total << ',' << row.completed << ',' << row.failed << ','
        << detail::format_double(row.top20_mean_all) << '\n';
  return rows;
}

// ---- standalone series input and fit summaries -----------------------------

// Read a two-column numeric CSV; a non-numeric first line is treated as a
// header and skipped.
inline std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open input file: " + path);
  std::vector<std::pair<double, double>> points;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string xs, ys;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, ys, ',')) {
      if (first) {
        first = false;
        continue;
      }
      fail(errc::parse_error, path + ":" + std::to_string(line_no) +
                                  ": expected two comma-separated columns");
    }
    try {
      std::size_t used = 0;
      const double x = std::stod(xs, &used);
      const double y = std::stod(ys);
      (void)used;
      points.emplace_back(x, y);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header row
      }
      fail(errc::parse_error,
           path + ":" + std::to_string(line_no) + ": malformed number");
    }
    first = false;
  }
  if (points.empty()) fail(errc::parse_error, path + ": no data rows");
  return points;
}

inline std::string format_fit_line(const nlohmann::json& entry) {
  std::ostringstream out;
  const std::string name = entry.at("series_name").get<std::string>();
  const std::string model = entry.at("model").get<std::string>();
  const auto& params = entry.at("params");
  std::string ptext;
  if (model == "powerlaw") {
    ptext = "A=" + detail::format_double(params.at("A").get<double>()) +
            " B=" + detail::format_double(params.at("B").get<double>());
  } else {
    ptext = "C=" + detail::format_double(params.at("C").get<double>()) +
            " D=" + detail::format_double(params.at("D").get<double>()) +
            " E=" + detail::format_double(params.at("E_rate").get<double>()) +
            " k0=" + std::to_string(params.at("k0").get<long long>());
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-26s %-14s %-58s r2=%.6f rmse=%.6g n=%d%s",
                name.c_str(), model.c_str(), ptext.c_str(),
                entry.at("r_squared").get<double>(), entry.at("rmse").get<double>(),
                entry.at("n_points").get<int>(),
                entry.at("converged").get<bool>() ? "" : " (not converged)");
  out << buf;
  return out.str();
}

// Human-readable summary of <dir>/fits.json, one line per fitted series.
inline std::string fit_summary_table(const std::string& dir) {
  const std::filesystem::path path = std::filesystem::path(dir) / "fits.json";
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, path.string() + ": " + e.what());
  }
  if (!doc.is_array()) fail(errc::parse_error, path.string() + ": expected an array");
  std::ostringstream out;
  if (doc.empty()) {
    out << "(no fits recorded)\n";
    return out.str();
  }
  for (const auto& entry : doc) out << format_fit_line(entry) << '\n';
  return out.str();
}

}  // namespace qnetsim
