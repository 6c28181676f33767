// Command-line front end: single runs, parameter sweeps, standalone curve
// fits, and fit-summary reports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnetsim/config_json.hpp"
#include "qnetsim/report_io.hpp"
#include "qnetsim/simulation.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string token =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty())
      qnetsim::fail(qnetsim::errc::validation_error, "empty value in --values list");
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      qnetsim::fail(qnetsim::errc::validation_error,
                    "bad numeric value \"" + token + "\" in --values");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

// --out wins over the config's output_dir; QNETSIM_OUT wins over both.
std::string resolve_out_dir(const std::string& config_dir, const std::string& cli_out) {
  if (const char* env = std::getenv("QNETSIM_OUT"); env && *env) return env;
  if (!cli_out.empty()) return cli_out;
  return config_dir;
}

std::string describe(const qnetsim::FitResult& fit) {
  using qnetsim::detail::format_double;
  if (fit.model == qnetsim::FitResult::Model::power_law)
    return "A=" + format_double(fit.amplitude) + " B=" + format_double(fit.exponent) +
           " r2=" + format_double(fit.r_squared) + " rmse=" + format_double(fit.rmse) +
           " n=" + std::to_string(fit.n_points);
  return "C=" + format_double(fit.ceiling) + " D=" + format_double(fit.depth) +
         " E=" + format_double(fit.rate) + " k0=" + std::to_string(fit.onset) +
         " r2=" + format_double(fit.r_squared) + " rmse=" + format_double(fit.rmse) +
         " n=" + std::to_string(fit.n_points) +
         (fit.converged ? "" : " (not converged)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement distribution network simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values_csv, model, input_csv, report_dir;
  std::string k0_arg = "0";
  std::optional<std::uint64_t> seed_override;

  CLI::App* run = app.add_subcommand("run", "execute one simulation");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--out", out_dir, "output directory (QNETSIM_OUT overrides)");

  CLI::App* sweep = app.add_subcommand("sweep", "one run per parameter value");
  sweep->add_option("--param", param, "sigma | exponent | connections | rho")
      ->required();
  sweep->add_option("--values", values_csv, "comma-separated values, e.g. 10,20,30")
      ->required();
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--seed", seed_override, "override the config base seed");
  sweep->add_option("--out", out_dir, "output root (QNETSIM_OUT overrides)");

  CLI::App* fit = app.add_subcommand("fit", "fit a standalone x,y series");
  fit->add_option("--model", model, "powerlaw | monomolecular")->required();
  fit->add_option("--input", input_csv, "two-column CSV (x,y)")->required();
  fit->add_option("--k0", k0_arg, "monomolecular onset: integer or \"auto\"");

  CLI::App* report = app.add_subcommand("report", "print the fit summary of a run");
  report->add_option("--in", report_dir, "run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      qnetsim::SimConfig cfg = qnetsim::load_sim_config(config_path);
      if (seed_override) cfg.seed = *seed_override;
      cfg.output_dir = resolve_out_dir(cfg.output_dir, out_dir);
      const qnetsim::SimulationReport rep = qnetsim::run_and_write(cfg);
      const long long e_final =
          rep.metrics.e_total.empty() ? 0 : rep.metrics.e_total.back();
      std::cout << "run complete: seed=" << cfg.seed << " connections=" << cfg.m_connections
                << " completed=" << rep.completed << " failed=" << rep.failed
                << " final_e_total=" << e_final << '\n'
                << "outputs in " << cfg.output_dir << '\n';
      for (const auto& nf : rep.fits)
        std::cout << "  " << nf.series_name << ": " << describe(nf.fit) << '\n';
    } else if (*sweep) {
      qnetsim::SimConfig cfg = qnetsim::load_sim_config(config_path);
      if (seed_override) cfg.seed = *seed_override;
      const std::string root = resolve_out_dir(cfg.output_dir, out_dir);
      const auto rows = qnetsim::run_sweep(cfg, param, parse_values(values_csv), root);
      std::cout << "sweep complete: " << rows.size() << " runs under " << root << '\n';
      for (const auto& row : rows)
        std::cout << "  " << param << "=" << qnetsim::detail::format_double(row.value)
                  << " seed=" << row.seed << " final_e_total=" << row.final_e_total
                  << " top20_mean=" << qnetsim::detail::format_double(row.top20_mean_all)
                  << '\n';
    } else if (*fit) {
      const auto points = qnetsim::read_xy_csv(input_csv);
      qnetsim::FitResult result;
      if (model == "powerlaw") {
        if (k0_arg != "0")
          qnetsim::fail(qnetsim::errc::validation_error,
                        "--k0 applies to the monomolecular model only");
        result = qnetsim::fit_power_law(points);
      } else if (model == "monomolecular") {
        if (k0_arg == "auto") {
          result = qnetsim::fit_monomolecular_auto_onset(points);
        } else {
          long long k0 = 0;
          try {
            std::size_t used = 0;
            k0 = std::stoll(k0_arg, &used);
            if (used != k0_arg.size()) throw std::invalid_argument(k0_arg);
          } catch (const std::exception&) {
            qnetsim::fail(qnetsim::errc::validation_error,
                          "--k0 must be an integer or \"auto\"");
          }
          result = qnetsim::fit_monomolecular(points, k0);
        }
      } else {
        qnetsim::fail(qnetsim::errc::validation_error,
                      "--model must be powerlaw or monomolecular");
      }
      std::cout << describe(result) << '\n';
    } else if (*report) {
      std::cout << qnetsim::fit_summary_table(report_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
