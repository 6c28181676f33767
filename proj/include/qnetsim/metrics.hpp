#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/entangled_graph.hpp"
#include "qnetsim/error.hpp"
#include "qnetsim/protocol.hpp"

namespace qnetsim {

enum class KindFilter { all, physical, virtual_ };

inline bool kind_matches(KindFilter f, EdgeKind k) {
  switch (f) {
    case KindFilter::all: return true;
    case KindFilter::physical: return k == EdgeKind::physical;
    case KindFilter::virtual_: return k == EdgeKind::virtual_;
  }
  return false;
}

// Usage frequencies in descending order as (rank, frequency), rank starting
// at 1; equal frequencies keep edge-id order.
inline std::vector<std::pair<long long, long long>> sorted_usage_frequencies(
    const EntangledGraph& g, KindFilter filter) {
  std::vector<std::pair<long long, int>> items;  // (-ish) sort key: (freq desc, id asc)
  for (const EntangledEdge& e : g.edges())
    if (kind_matches(filter, e.kind)) items.emplace_back(e.usage_frequency, e.id);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::pair<long long, long long>> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    out.emplace_back(static_cast<int>(i) + 1, items[i].first);
  return out;
}

// Mean of the top-k sorted frequencies (all of them when fewer than k).
inline double top_mean_frequency(const EntangledGraph& g, KindFilter filter, int k) {
  const auto sorted = sorted_usage_frequencies(g, filter);
  if (sorted.empty() || k <= 0) return 0.0;
  const std::size_t take = std::min<std::size_t>(sorted.size(), static_cast<std::size_t>(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += static_cast<double>(sorted[i].second);
  return sum / static_cast<double>(take);
}

// Time series sampled once per connection, plus strided per-node degree
// snapshots and per-node request-touch counts.
struct MetricsSeries {
  int n_nodes = 0;
  long long stride = 1;  // degree snapshot stride
  std::vector<long long> steps;
  std::vector<long long> e_total;
  std::vector<long long> max_virtual_freq;
  std::vector<long long> max_physical_freq;
  std::vector<long long> degree_steps;
  std::vector<std::vector<int>> degree_snapshots;  // [snapshot][node], index 0 unused
  std::vector<long long> connection_touches;       // per node, index 0 unused

  void init(int n, long long stride_hint) {
    n_nodes = n;
    stride = stride_hint;
    connection_touches.assign(static_cast<std::size_t>(n) + 1, 0);
  }
};

// Append the state of step k. Steps must be recorded in strictly increasing
// order. Degree snapshots land on stride boundaries, at k<=1, and whenever
// force_degrees is set (the run's final step).
inline void record_snapshot(MetricsSeries& series, const SimState& state,
                            long long k, bool force_degrees = false) {
  if (!series.steps.empty() && k <= series.steps.back())
    fail(errc::out_of_order_step,
         "step " + std::to_string(k) + " not after " +
             std::to_string(series.steps.back()));
  series.steps.push_back(k);
  series.e_total.push_back(state.graph.edge_count());
  series.max_virtual_freq.push_back(state.graph.max_frequency(EdgeKind::virtual_));
  series.max_physical_freq.push_back(state.graph.max_frequency(EdgeKind::physical));
  const bool strided = series.stride > 0 && k % series.stride == 0;
  if (force_degrees || strided || k <= 1) {
    const int n = state.topo.node_count();
    std::vector<int> degrees(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId j = 1; j <= n; ++j)
      degrees[static_cast<std::size_t>(j)] = state.graph.degree(j);
    series.degree_steps.push_back(k);
    series.degree_snapshots.push_back(std::move(degrees));
  }
}

// Net degree change over the recorded window, per node.
struct DegreeGrowth {
  NodeId node = 0;
  long long delta = 0;
  int initial_degree = 0;
  int final_degree = 0;
};

struct DegreeGrowthReport {
  std::vector<DegreeGrowth> per_node;  // ascending node id
  NodeId max_node = 0;  // largest delta, smallest id on ties
  NodeId min_node = 0;  // smallest delta, smallest id on ties
};

inline DegreeGrowthReport degree_growth(const MetricsSeries& series) {
  if (series.degree_snapshots.size() < 2)
    fail(errc::insufficient_data, "need at least two degree snapshots");
  const std::vector<int>& first = series.degree_snapshots.front();
  const std::vector<int>& last = series.degree_snapshots.back();
  DegreeGrowthReport report;
  report.per_node.reserve(static_cast<std::size_t>(series.n_nodes));
  for (NodeId j = 1; j <= series.n_nodes; ++j) {
    const auto js = static_cast<std::size_t>(j);
    DegreeGrowth g;
    g.node = j;
    g.initial_degree = first[js];
    g.final_degree = last[js];
    g.delta = static_cast<long long>(last[js]) - first[js];
    report.per_node.push_back(g);
    if (report.max_node == 0 ||
        g.delta > report.per_node[static_cast<std::size_t>(report.max_node) - 1].delta)
      report.max_node = j;
    if (report.min_node == 0 ||
        g.delta < report.per_node[static_cast<std::size_t>(report.min_node) - 1].delta)
      report.min_node = j;
  }
  return report;
}

}  // namespace qnetsim
