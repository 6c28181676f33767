#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/curve_fit.hpp"
#include "qnetsim/error.hpp"
#include "qnetsim/metrics.hpp"
#include "qnetsim/protocol.hpp"
#include "qnetsim/request_sampling.hpp"
#include "qnetsim/rng.hpp"
#include "qnetsim/topology.hpp"

namespace qnetsim {

struct SimConfig {
  int n_nodes = 100;
  double alpha = 0.25;
  long long m_connections = 100000;
  RequestDistribution distribution;
  double proactive_fraction = 0.10;
  long long proactive_interval = 1;  // 0 disables proactive rounds
  std::uint64_t seed = 1;
  long long degree_stride = 0;  // 0 = auto: 1 when m <= 10^4, else 10
  std::string output_dir = "out";
};

inline void validate(const SimConfig& cfg) {
  if (cfg.n_nodes < 2) fail(errc::invalid_parameter, "n_nodes must be >= 2");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    fail(errc::invalid_parameter, "alpha must be in (0, 1]");
  if (cfg.m_connections < 0)
    fail(errc::invalid_parameter, "m_connections must be >= 0");
  validate(cfg.distribution);
  if (!(cfg.proactive_fraction >= 0.0 && cfg.proactive_fraction <= 1.0))
    fail(errc::invalid_parameter, "proactive_fraction must be in [0, 1]");
  if (cfg.proactive_interval < 0)
    fail(errc::invalid_parameter, "proactive_interval must be >= 0");
  if (cfg.degree_stride < 0)
    fail(errc::invalid_parameter, "degree_stride must be >= 0");
}

inline long long effective_degree_stride(const SimConfig& cfg) {
  if (cfg.degree_stride > 0) return cfg.degree_stride;
  return cfg.m_connections <= 10000 ? 1 : 10;
}

struct NamedFit {
  std::string series_name;
  FitResult fit;
};

struct SimulationReport {
  SimConfig config;
  MetricsSeries metrics;
  DegreeGrowthReport degree_growth;
  std::vector<std::pair<long long, long long>> freq_all;       // (rank, frequency)
  std::vector<std::pair<long long, long long>> freq_physical;  // desc by frequency
  std::vector<std::pair<long long, long long>> freq_virtual;
  std::vector<NamedFit> fits;  // only families with enough data to fit
  long long completed = 0;
  long long failed = 0;
  std::vector<int> final_entangled_degrees;  // index 0 unused
  std::vector<int> distinct_partners;        // per node, over requests; 0 unused
  EventLog events;

  const NamedFit* find_fit(const std::string& name) const {
    for (const auto& nf : fits)
      if (nf.series_name == name) return &nf;
    return nullptr;
  }
};

namespace detail {

inline std::vector<std::pair<double, double>> rank_points(
    const std::vector<std::pair<long long, long long>>& freqs) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(freqs.size());
  for (const auto& [rank, f] : freqs)
    pts.emplace_back(static_cast<double>(rank), static_cast<double>(f));
  return pts;
}

inline void try_power_law_fit(SimulationReport& report, const std::string& name,
                              const std::vector<std::pair<double, double>>& pts) {
  try {
    report.fits.push_back({name, fit_power_law(pts)});
  } catch (const Error&) {
    // too few usable points; the family is simply absent from the report
  }
}

inline void try_mono_fit(SimulationReport& report, const std::string& name,
                         const std::vector<std::pair<double, double>>& pts,
                         bool auto_onset) {
  try {
    report.fits.push_back(
        {name, auto_onset ? fit_monomolecular_auto_onset(pts) : fit_monomolecular(pts)});
  } catch (const Error&) {
  }
}

}  // namespace detail

// Run the full simulation: generate a topology, seed entanglement with one
// proactive round, then alternate connection requests with proactive rounds.
// All randomness flows through a single generator in a fixed order (topology,
// initial round, then per step: endpoint pair, proactive round), so a given
// config yields byte-identical results on every run.
inline SimulationReport run_simulation(const SimConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);

  SimulationReport report;
  report.config = cfg;

  SimState state(PhysicalTopology::generate(cfg.n_nodes, cfg.alpha, rng));
  const int n = cfg.n_nodes;

  NodeSampler sampler(cfg.distribution, n);
  const long long stride = effective_degree_stride(cfg);
  report.metrics.init(n, stride);

  std::vector<NodeSet> partners(static_cast<std::size_t>(n) + 1, NodeSet(n));

  if (cfg.proactive_interval > 0)
    proactive_round(state, cfg.proactive_fraction, rng, 0);
  record_snapshot(report.metrics, state, 0, /*force_degrees=*/true);

  for (long long k = 1; k <= cfg.m_connections; ++k) {
    const auto [u, v] = sample_pair(sampler, rng);
    report.metrics.connection_touches[u] += 1;
    report.metrics.connection_touches[v] += 1;
    partners[u].set(v);
    partners[v].set(u);

    const ConnectionOutcome outcome = setup_connection(state, u, v, k);
    if (outcome.completed)
      ++report.completed;
    else
      ++report.failed;

    if (cfg.proactive_interval > 0 && k % cfg.proactive_interval == 0)
      proactive_round(state, cfg.proactive_fraction, rng, k);

    record_snapshot(report.metrics, state, k,
                    /*force_degrees=*/k == cfg.m_connections);
  }

  report.final_entangled_degrees.assign(static_cast<std::size_t>(n) + 1, 0);
  report.distinct_partners.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) {
    report.final_entangled_degrees[j] = state.graph.degree(j);
    report.distinct_partners[j] = partners[j].count();
  }

  if (report.metrics.degree_steps.size() >= 2)
    report.degree_growth = degree_growth(report.metrics);

  report.freq_all = sorted_usage_frequencies(state.graph, KindFilter::all);
  report.freq_physical = sorted_usage_frequencies(state.graph, KindFilter::physical);
  report.freq_virtual = sorted_usage_frequencies(state.graph, KindFilter::virtual_);

  detail::try_power_law_fit(report, "edge_freq_all", detail::rank_points(report.freq_all));
  detail::try_power_law_fit(report, "edge_freq_physical",
                            detail::rank_points(report.freq_physical));
  detail::try_power_law_fit(report, "edge_freq_virtual",
                            detail::rank_points(report.freq_virtual));

  {
    std::vector<std::pair<double, double>> growth;
    for (std::size_t i = 0; i < report.metrics.steps.size(); ++i) {
      if (report.metrics.steps[i] > 1000) break;
      growth.emplace_back(static_cast<double>(report.metrics.steps[i]),
                          static_cast<double>(report.metrics.e_total[i]));
    }
    detail::try_mono_fit(report, "ent_growth", growth, /*auto_onset=*/false);
  }

  if (!report.degree_growth.per_node.empty()) {
    const auto degree_series = [&](int node) {
      std::vector<std::pair<double, double>> pts;
      pts.reserve(report.metrics.degree_steps.size());
      for (std::size_t i = 0; i < report.metrics.degree_steps.size(); ++i)
        pts.emplace_back(static_cast<double>(report.metrics.degree_steps[i]),
                         static_cast<double>(report.metrics.degree_snapshots[i][
                             static_cast<std::size_t>(node)]));
      return pts;
    };
    detail::try_mono_fit(report, "degree_growth_max_node",
                         degree_series(report.degree_growth.max_node),
                         /*auto_onset=*/true);
    detail::try_mono_fit(report, "degree_growth_min_node",
                         degree_series(report.degree_growth.min_node),
                         /*auto_onset=*/true);
  }

  report.events = std::move(state.events);
  return report;
}

}  // namespace qnetsim
