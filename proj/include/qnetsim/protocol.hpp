#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/entangled_graph.hpp"
#include "qnetsim/error.hpp"
#include "qnetsim/events.hpp"
#include "qnetsim/rng.hpp"
#include "qnetsim/topology.hpp"

namespace qnetsim {

// One entanglement swap: both consumed edges share `via`, the produced edge
// joins their outer endpoints. Consumed edges persist with bumped frequency.
struct SwapEvent {
  NodeId via = 0;
  int consumed_first = 0, consumed_second = 0;
  int produced = 0;
  long long step = 0;
};

// Result of one connection request.
struct ConnectionOutcome {
  NodeId u = 0, v = 0;
  bool completed = false;
  std::vector<NodeId> path;  // empty when failed
  int direct_entanglements = 0;
  int swap_count = 0;
  long long step = 0;
};

struct ProactiveOutcome {
  std::vector<int> created_edges;
  std::vector<SwapEvent> swaps;
};

// Everything mutated while serving traffic, bundled so protocol operations
// stay free functions.
struct SimState {
  PhysicalTopology topo;
  HistoricalCounts hc;
  EntangledGraph graph;
  EventLog events;

  explicit SimState(PhysicalTopology t)
      : topo(std::move(t)),
        hc(topo),
        graph(topo.node_count()),
        swap_scan_clean_(static_cast<std::size_t>(topo.node_count()) + 1, 0) {}

  // Direct entanglement plus event logging. Returns (edge id, created?).
  std::pair<int, bool> ensure(NodeId u, NodeId v, long long step) {
    const auto [id, created] = graph.ensure_entangled(topo, hc, u, v, step);
    if (created) {
      note_new_edge(u, v);
      const EntangledEdge& e = graph.edge(id);
      Event ev;
      ev.step = step;
      ev.type = EventType::edge_created;
      ev.u = e.u;
      ev.v = e.v;
      ev.edge_id = id;
      ev.kind = e.kind;
      events.push_back(ev);
    }
    return {id, created};
  }

  // Proactive swap-scan memo: true when node b's entangled neighborhood was
  // exhaustively scanned without finding a missing pair. New edges among the
  // neighborhood only remove candidates, so the memo stays valid until b
  // gains a neighbor.
  bool swap_scan_clean(NodeId b) const {
    return swap_scan_clean_[static_cast<std::size_t>(b)] != 0;
  }
  void mark_swap_scan_clean(NodeId b) {
    swap_scan_clean_[static_cast<std::size_t>(b)] = 1;
  }
  void note_new_edge(NodeId u, NodeId v) {
    swap_scan_clean_[static_cast<std::size_t>(u)] = 0;
    swap_scan_clean_[static_cast<std::size_t>(v)] = 0;
  }

 private:
  std::vector<std::uint8_t> swap_scan_clean_;
};

// Neighbor whose historical count sits closest to the neighborhood mean
// (minimum squared difference); ties go to the smallest id.
inline NodeId proactive_select(
    NodeId node, const std::vector<std::pair<NodeId, long long>>& neighbor_counts) {
  if (neighbor_counts.empty())
    fail(errc::empty_neighborhood,
         "node " + std::to_string(node) + " has no neighbors to select from");
  double mean = 0.0;
  for (const auto& [id, c] : neighbor_counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(neighbor_counts.size());
  NodeId best = 0;
  double best_d2 = 0.0;
  bool first = true;
  for (const auto& [id, c] : neighbor_counts) {
    const double diff = static_cast<double>(c) - mean;
    const double d2 = diff * diff;
    if (first || d2 < best_d2 || (d2 == best_d2 && id < best)) {
      best = id;
      best_d2 = d2;
      first = false;
    }
  }
  return best;
}

// Swap the entanglements `edge_ab` and `edge_bc` (which must share exactly one
// endpoint) into an edge between their outer endpoints. Consumed edges get a
// frequency bump; consumed physical-kind edges also bump historical counts.
inline SwapEvent apply_swap(SimState& state, int edge_ab, int edge_bc,
                            long long step) {
  // copies, not references: inserting the product edge reallocates the store
  const EntangledEdge e1 = state.graph.edge(edge_ab);
  const EntangledEdge e2 = state.graph.edge(edge_bc);
  if (edge_ab == edge_bc)
    fail(errc::degenerate_swap, "swap needs two distinct edges");
  NodeId via = 0;
  int shared = 0;
  for (NodeId x : {e1.u, e1.v})
    if (x == e2.u || x == e2.v) {
      via = x;
      ++shared;
    }
  if (shared == 0)
    fail(errc::not_adjacent_edges, "edges share no endpoint");
  if (shared > 1)
    fail(errc::degenerate_swap, "edges cover the same pair");
  const NodeId a = e1.u == via ? e1.v : e1.u;
  const NodeId c = e2.u == via ? e2.v : e2.u;
  if (a == c) fail(errc::degenerate_swap, "outer endpoints coincide");
  if (state.graph.has_edge(a, c))
    fail(errc::duplicate_target_edge,
         "{" + std::to_string(a) + "," + std::to_string(c) + "} already entangled");

  const int produced = state.graph.insert_swap_product(state.topo, a, c, step);
  state.note_new_edge(a, c);
  state.graph.increment_frequency(edge_ab);
  state.graph.increment_frequency(edge_bc);
  for (const EntangledEdge& consumed : {e1, e2})
    if (consumed.kind == EdgeKind::physical)
      state.hc.bump(state.topo, consumed.u, consumed.v);

  SwapEvent sw{via, edge_ab, edge_bc, produced, step};
  Event ev;
  ev.step = step;
  ev.type = EventType::swap;
  const EntangledEdge& p = state.graph.edge(produced);
  ev.u = p.u;
  ev.v = p.v;
  ev.edge_id = produced;
  ev.kind = p.kind;
  ev.via = via;
  ev.consumed_first = edge_ab;
  ev.consumed_second = edge_bc;
  state.events.push_back(ev);
  return sw;
}

// Proactive entangle phase for one selected node: pick the physical neighbor
// via proactive_select and ensure entanglement. Returns the created edge id,
// or nullopt when the chosen pair was already entangled.
inline std::optional<int> proactive_entangle_step(SimState& state, NodeId b,
                                                  long long step) {
  const std::vector<NodeId>& nbrs = state.topo.neighbors(b);
  std::vector<std::pair<NodeId, long long>> counts;
  counts.reserve(nbrs.size());
  for (NodeId x : nbrs) counts.emplace_back(x, state.hc.at(state.topo, b, x));
  const NodeId chosen = proactive_select(b, counts);
  const auto [id, created] = state.ensure(b, chosen, step);
  if (!created) return std::nullopt;
  return id;
}

// Proactive swap phase for one selected node: apply at most one swap, on the
// lexicographically smallest pair (a, c) of b's entangled neighbors that is
// neither entangled nor physically adjacent (adjacent pairs belong to direct
// entanglement, never to swapping).
inline std::optional<SwapEvent> proactive_swap_step(SimState& state, NodeId b,
                                                    long long step) {
  if (state.swap_scan_clean(b)) return std::nullopt;
  if (state.graph.degree(b) < 2) {
    state.mark_swap_scan_clean(b);
    return std::nullopt;
  }
  const std::vector<NodeId> nbrs = state.graph.adjacency(b).to_vector();
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const NodeId a = nbrs[i], c = nbrs[j];
      if (state.graph.has_edge(a, c) || state.topo.has_link(a, c)) continue;
      const EntangledEdge* ab = state.graph.find(a, b);
      const EntangledEdge* bc = state.graph.find(b, c);
      return apply_swap(state, ab->id, bc->id, step);
    }
  }
  state.mark_swap_scan_clean(b);
  return std::nullopt;
}

// One proactive round: ceil(rho*N) distinct nodes chosen uniformly, each
// first ensuring one direct entanglement (historical-count rule), then, in
// ascending id order, applying at most one swap each.
inline ProactiveOutcome proactive_round(SimState& state, double rho, Rng& rng,
                                        long long step) {
  if (rho < 0.0 || rho > 1.0)
    fail(errc::invalid_parameter, "proactive fraction must lie in [0, 1]");
  const int n = state.topo.node_count();
  int count = static_cast<int>(std::ceil(rho * static_cast<double>(n) - 1e-9));
  count = std::clamp(count, 0, n);
  ProactiveOutcome out;
  if (count == 0) return out;

  std::vector<NodeId> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 1);
  for (int i = 0; i < count; ++i) {
    const auto j =
        static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }
  std::vector<NodeId> selected(ids.begin(), ids.begin() + count);
  std::sort(selected.begin(), selected.end());

  for (NodeId b : selected)
    if (const auto created = proactive_entangle_step(state, b, step))
      out.created_edges.push_back(*created);
  for (NodeId b : selected)
    if (const auto sw = proactive_swap_step(state, b, step))
      out.swaps.push_back(*sw);
  return out;
}

// Shortest path from u to v over the union of physical links and entangled
// edges, BFS with ascending-id exploration. Empty when unreachable.
inline std::vector<NodeId> shortest_union_path(const SimState& state, NodeId u,
                                               NodeId v) {
  const int n = state.topo.node_count();
  std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> queue;
  queue.reserve(static_cast<std::size_t>(n));
  queue.push_back(u);
  parent[static_cast<std::size_t>(u)] = u;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    bool found = false;
    for_each_union(state.topo.adjacency(x), state.graph.adjacency(x),
                   [&](NodeId y) {
                     if (parent[static_cast<std::size_t>(y)] != 0) return;
                     parent[static_cast<std::size_t>(y)] = x;
                     queue.push_back(y);
                     if (y == v) found = true;
                   });
    if (found) break;
  }
  if (parent[static_cast<std::size_t>(v)] == 0) return {};
  std::vector<NodeId> path;
  for (NodeId x = v; x != u; x = parent[static_cast<std::size_t>(x)])
    path.push_back(x);
  path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

// Serve one connection request:
//  1. an existing entangled edge {u,v} is consumed directly;
//  2. otherwise route over the union graph, entangle missing physical hops,
//  3. collapse the path with left-to-right swaps anchored at u,
//  4. and consume the resulting end-to-end edge.
// A request with no route fails without touching state.
inline ConnectionOutcome setup_connection(SimState& state, NodeId u, NodeId v,
                                          long long step) {
  if (u == v)
    fail(errc::degenerate_request, "request endpoints must differ");
  if (u < 1 || u > state.topo.node_count() || v < 1 || v > state.topo.node_count())
    fail(errc::invalid_parameter, "request endpoint out of range");

  ConnectionOutcome out;
  out.u = u;
  out.v = v;
  out.step = step;

  const auto log_result = [&](bool completed) {
    Event ev;
    ev.step = step;
    ev.type = completed ? EventType::connection_completed
                        : EventType::connection_failed;
    ev.u = u;
    ev.v = v;
    ev.edges_created = out.direct_entanglements;
    ev.swaps = out.swap_count;
    state.events.push_back(ev);
  };

  if (const EntangledEdge* direct = state.graph.find(u, v)) {
    state.graph.increment_frequency(direct->id);
    out.completed = true;
    out.path = {u, v};
    log_result(true);
    return out;
  }

  out.path = shortest_union_path(state, u, v);
  if (out.path.empty()) {
    out.completed = false;
    log_result(false);
    return out;
  }

  for (std::size_t i = 0; i + 1 < out.path.size(); ++i) {
    const NodeId a = out.path[i], b = out.path[i + 1];
    if (!state.graph.has_edge(a, b)) {
      state.ensure(a, b, step);
      ++out.direct_entanglements;
    }
  }

  for (std::size_t i = 2; i < out.path.size(); ++i) {
    const NodeId mid = out.path[i - 1], next = out.path[i];
    if (state.graph.has_edge(u, next)) continue;  // reuse an existing edge
    const EntangledEdge* left = state.graph.find(u, mid);
    const EntangledEdge* hop = state.graph.find(mid, next);
    apply_swap(state, left->id, hop->id, step);
    ++out.swap_count;
  }

  state.graph.increment_frequency(state.graph.find(u, v)->id);
  out.completed = true;
  log_result(true);
  return out;
}

}  // namespace qnetsim
