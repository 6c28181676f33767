#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnetsim/error.hpp"
#include "qnetsim/node_set.hpp"
#include "qnetsim/topology.hpp"

namespace qnetsim {

enum class EdgeKind { physical, virtual_ };

inline const char* edge_kind_name(EdgeKind k) {
  return k == EdgeKind::physical ? "physical" : "virtual";
}

// One entangled pair. "physical" edges sit on a physical link, "virtual"
// edges were produced by entanglement swapping between non-adjacent nodes.
struct EntangledEdge {
  int id;  // 1-based creation order
  NodeId u, v;  // u < v
  EdgeKind kind;
  long long usage_frequency;
  long long creation_step;
};

// Mutable graph of entangled pairs layered over a PhysicalTopology. At most
// one edge per unordered node pair; edges are never removed.
class EntangledGraph {
 public:
  EntangledGraph() = default;
  explicit EntangledGraph(int n)
      : n_(n),
        adj_(static_cast<std::size_t>(n) + 1, NodeSet(n)),
        deg_(static_cast<std::size_t>(n) + 1, 0),
        deg_phys_(static_cast<std::size_t>(n) + 1, 0),
        deg_virt_(static_cast<std::size_t>(n) + 1, 0) {}

  int node_count() const { return n_; }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }
  const std::vector<EntangledEdge>& edges() const { return edges_; }

  const EntangledEdge& edge(int edge_id) const {
    if (edge_id < 1 || edge_id > static_cast<int>(edges_.size()))
      fail(errc::invalid_parameter, "edge id " + std::to_string(edge_id) + " out of range");
    return edges_[static_cast<std::size_t>(edge_id) - 1];
  }

  bool has_edge(NodeId u, NodeId v) const {
    return index_.find(detail::pair_key(u, v)) != index_.end();
  }

  // Returns nullptr when the pair has no entangled edge.
  const EntangledEdge* find(NodeId u, NodeId v) const {
    const auto it = index_.find(detail::pair_key(u, v));
    return it == index_.end() ? nullptr : &edges_[static_cast<std::size_t>(it->second)];
  }

  const NodeSet& adjacency(NodeId j) const {
    check_node(j);
    return adj_[static_cast<std::size_t>(j)];
  }

  int degree(NodeId j) const {
    check_node(j);
    return deg_[static_cast<std::size_t>(j)];
  }
  int physical_degree(NodeId j) const {
    check_node(j);
    return deg_phys_[static_cast<std::size_t>(j)];
  }
  int virtual_degree(NodeId j) const {
    check_node(j);
    return deg_virt_[static_cast<std::size_t>(j)];
  }

  long long max_frequency(EdgeKind k) const {
    return max_freq_[k == EdgeKind::physical ? 0 : 1];
  }

  // Idempotent direct entanglement over a physical link. Creates the edge
  // with usage_frequency 1 and bumps the link's historical count only when
  // the pair was not yet entangled. Returns (edge id, created?).
  std::pair<int, bool> ensure_entangled(const PhysicalTopology& topo,
                                        HistoricalCounts& hc, NodeId u, NodeId v,
                                        long long step) {
    if (!topo.has_link(u, v))
      fail(errc::not_physically_adjacent,
           "{" + std::to_string(u) + "," + std::to_string(v) +
               "} is not a physical link");
    if (const EntangledEdge* existing = find(u, v)) return {existing->id, false};
    const int id = add_edge(u, v, EdgeKind::physical, 1, step);
    hc.bump(topo, u, v);
    return {id, true};
  }

  // Insert the edge produced by a swap with usage_frequency 0. The kind
  // follows physical adjacency so kind-consistency can never break; protocol
  // flows only ever produce non-adjacent (virtual) pairs.
  int insert_swap_product(const PhysicalTopology& topo, NodeId u, NodeId v,
                          long long step) {
    const EdgeKind kind =
        topo.has_link(u, v) ? EdgeKind::physical : EdgeKind::virtual_;
    return add_edge(u, v, kind, 0, step);
  }

  void increment_frequency(int edge_id) {
    EntangledEdge& e = edges_[static_cast<std::size_t>(edge_id) - 1];
    ++e.usage_frequency;
    note_frequency(e.kind, e.usage_frequency);
  }

  // Full-scan consistency checks: per-node degree identities (total and the
  // physical/virtual decomposition), kind consistency with the topology, and
  // pair uniqueness. For tests and debugging.
  void validate_invariants(const PhysicalTopology& topo) const {
    std::vector<int> d(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<int> dp(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<int> dv(static_cast<std::size_t>(n_) + 1, 0);
    std::unordered_map<std::uint32_t, int> seen;
    for (const EntangledEdge& e : edges_) {
      if (e.u >= e.v) fail(errc::invalid_parameter, "edge endpoints not ordered");
      if (!seen.emplace(detail::pair_key(e.u, e.v), e.id).second)
        fail(errc::invalid_parameter, "duplicate edge pair");
      const bool adjacent = topo.has_link(e.u, e.v);
      if (adjacent != (e.kind == EdgeKind::physical))
        fail(errc::invalid_parameter, "edge kind inconsistent with topology");
      for (NodeId x : {e.u, e.v}) {
        ++d[static_cast<std::size_t>(x)];
        ++(e.kind == EdgeKind::physical ? dp : dv)[static_cast<std::size_t>(x)];
      }
    }
    for (NodeId j = 1; j <= n_; ++j) {
      const auto js = static_cast<std::size_t>(j);
      if (d[js] != deg_[js] || dp[js] != deg_phys_[js] || dv[js] != deg_virt_[js])
        fail(errc::invalid_parameter, "cached degree mismatch");
      if (deg_[js] != deg_phys_[js] + deg_virt_[js])
        fail(errc::invalid_parameter, "degree decomposition mismatch");
      if (deg_[js] != adj_[js].count())
        fail(errc::invalid_parameter, "adjacency bitset mismatch");
    }
  }

 private:
  void check_node(NodeId j) const {
    if (j < 1 || j > n_) fail(errc::invalid_parameter, "node id out of range");
  }

  int add_edge(NodeId u, NodeId v, EdgeKind kind, long long freq, long long step) {
    if (u > v) std::swap(u, v);
    check_node(u);
    check_node(v);
    if (u == v) fail(errc::invalid_parameter, "self-loop entanglement");
    if (has_edge(u, v)) fail(errc::duplicate_target_edge, "pair already entangled");
    const int id = static_cast<int>(edges_.size()) + 1;
    edges_.push_back({id, u, v, kind, freq, step});
    index_[detail::pair_key(u, v)] = id - 1;
    adj_[static_cast<std::size_t>(u)].set(v);
    adj_[static_cast<std::size_t>(v)].set(u);
    for (NodeId x : {u, v}) {
      ++deg_[static_cast<std::size_t>(x)];
      ++(kind == EdgeKind::physical ? deg_phys_ : deg_virt_)[static_cast<std::size_t>(x)];
    }
    note_frequency(kind, freq);
    return id;
  }

  void note_frequency(EdgeKind kind, long long f) {
    long long& m = max_freq_[kind == EdgeKind::physical ? 0 : 1];
    if (f > m) m = f;
  }

  int n_ = 0;
  std::vector<EntangledEdge> edges_;
  std::unordered_map<std::uint32_t, int> index_;
  std::vector<NodeSet> adj_;
  std::vector<int> deg_, deg_phys_, deg_virt_;
  long long max_freq_[2] = {0, 0};
};

// Number of entangled edges (either kind) incident to node j.
inline int entangled_degree(const EntangledGraph& g, NodeId j) {
  return g.degree(j);
}

}  // namespace qnetsim
