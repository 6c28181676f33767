#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnetsim/error.hpp"
#include "qnetsim/node_set.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

using NodeId = int;

namespace detail {
// Unordered pair key; node ids fit in 16 bits (capacity checked at build).
inline std::uint32_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint32_t>(u) << 16) | static_cast<std::uint32_t>(v);
}
}  // namespace detail

// Static physical communication graph on nodes 1..n. Immutable once built:
// links never appear or disappear during a simulation.
class PhysicalTopology {
 public:
  // Random construction: nodes are processed in ascending id order; node j
  // draws a target degree t_j uniformly from {1..floor(alpha*n)} and adds
  // links to uniformly chosen distinct non-neighbors until its degree (which
  // counts links added by earlier nodes) reaches t_j or no candidates remain.
  static PhysicalTopology generate(int n, double alpha, Rng& rng) {
    validate_params(n, alpha);
    const int max_target =
        static_cast<int>(std::floor(alpha * static_cast<double>(n) + 1e-9));
    PhysicalTopology topo(n, alpha);
    topo.targets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId j = 1; j <= n; ++j) {
      const int target =
          1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_target)));
      topo.targets_[static_cast<std::size_t>(j)] = target;
      while (topo.degree_[static_cast<std::size_t>(j)] < target) {
        std::vector<NodeId> candidates;
        candidates.reserve(static_cast<std::size_t>(n));
        for (NodeId other = 1; other <= n; ++other) {
          if (other != j && !topo.adj_[static_cast<std::size_t>(j)].test(other))
            candidates.push_back(other);
        }
        if (candidates.empty()) break;  // saturated: degree is already n-1
        const NodeId pick =
            candidates[rng.below(static_cast<std::uint64_t>(candidates.size()))];
        topo.add_link(j, pick);
      }
    }
    topo.finalize();
    return topo;
  }

  // Explicit construction from a link list (scripted scenarios, tests).
  static PhysicalTopology from_edges(int n,
                                     const std::vector<std::pair<NodeId, NodeId>>& links,
                                     double alpha = 1.0) {
    validate_params(n, alpha);
    PhysicalTopology topo(n, alpha);
    for (const auto& [u, v] : links) {
      if (u < 1 || u > n || v < 1 || v > n)
        fail(errc::invalid_parameter, "link endpoint out of range");
      if (u == v) fail(errc::invalid_parameter, "self-loop link");
      if (topo.adj_[static_cast<std::size_t>(u)].test(v))
        fail(errc::invalid_parameter, "duplicate link");
      topo.add_link(u, v);
    }
    for (NodeId j = 1; j <= n; ++j) {
      if (topo.degree_[static_cast<std::size_t>(j)] == 0)
        fail(errc::invalid_parameter,
             "node " + std::to_string(j) + " has no physical link");
    }
    topo.finalize();
    return topo;
  }

  int node_count() const { return n_; }
  double alpha() const { return alpha_; }
  int link_count() const { return static_cast<int>(links_.size()); }

  bool has_link(NodeId u, NodeId v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_ || u == v) return false;
    return adj_[static_cast<std::size_t>(u)].test(v);
  }

  const NodeSet& adjacency(NodeId j) const {
    check_node(j);
    return adj_[static_cast<std::size_t>(j)];
  }

  // Neighbor ids in ascending order.
  const std::vector<NodeId>& neighbors(NodeId j) const {
    check_node(j);
    return neighbors_[static_cast<std::size_t>(j)];
  }

  int degree(NodeId j) const {
    check_node(j);
    return degree_[static_cast<std::size_t>(j)];
  }

  // Links sorted lexicographically by (u, v) with u < v; index is the key for
  // HistoricalCounts.
  const std::vector<std::pair<NodeId, NodeId>>& links() const { return links_; }

  int link_index(NodeId u, NodeId v) const {
    const auto it = link_index_.find(detail::pair_key(u, v));
    return it == link_index_.end() ? -1 : it->second;
  }

  // Generation-time target degree draws (empty when built via from_edges).
  const std::vector<int>& target_draws() const { return targets_; }

 private:
  PhysicalTopology(int n, double alpha)
      : n_(n),
        alpha_(alpha),
        adj_(static_cast<std::size_t>(n) + 1, NodeSet(n)),
        degree_(static_cast<std::size_t>(n) + 1, 0) {}

  static void validate_params(int n, double alpha) {
    if (n < 2) fail(errc::invalid_parameter, "node count must be >= 2");
    if (n > 65535) fail(errc::invalid_parameter, "node count exceeds capacity");
    if (!(alpha > 0.0) || alpha > 1.0)
      fail(errc::invalid_parameter, "alpha must lie in (0, 1]");
    if (std::floor(alpha * static_cast<double>(n) + 1e-9) < 1.0)
      fail(errc::invalid_parameter, "floor(alpha*n) must be >= 1");
  }

  void check_node(NodeId j) const {
    if (j < 1 || j > n_) fail(errc::invalid_parameter, "node id out of range");
  }

  void add_link(NodeId u, NodeId v) {
    adj_[static_cast<std::size_t>(u)].set(v);
    adj_[static_cast<std::size_t>(v)].set(u);
    ++degree_[static_cast<std::size_t>(u)];
    ++degree_[static_cast<std::size_t>(v)];
    links_.emplace_back(std::min(u, v), std::max(u, v));
  }

  void finalize() {
    std::sort(links_.begin(), links_.end());
    link_index_.reserve(links_.size());
    for (std::size_t i = 0; i < links_.size(); ++i)
      link_index_[detail::pair_key(links_[i].first, links_[i].second)] =
          static_cast<int>(i);
    neighbors_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (NodeId j = 1; j <= n_; ++j)
      neighbors_[static_cast<std::size_t>(j)] =
          adj_[static_cast<std::size_t>(j)].to_vector();
  }

  int n_;
  double alpha_;
  std::vector<NodeSet> adj_;
  std::vector<int> degree_;
  std::vector<NodeId> targets_;
  std::vector<std::pair<NodeId, NodeId>> links_;
  std::unordered_map<std::uint32_t, int> link_index_;
  std::vector<std::vector<NodeId>> neighbors_;
};

// Per-physical-link counters of qubit transfers; the placement signal for
// proactive entanglement. Bumped on every direct entanglement creation and on
// every swap that consumes the link's entangled edge.
class HistoricalCounts {
 public:
  HistoricalCounts() = default;
  explicit HistoricalCounts(const PhysicalTopology& topo)
      : counts_(static_cast<std::size_t>(topo.link_count()), 0) {}

  long long at(const PhysicalTopology& topo, NodeId u, NodeId v) const {
    return counts_[index_of(topo, u, v)];
  }

  void bump(const PhysicalTopology& topo, NodeId u, NodeId v) {
    ++counts_[index_of(topo, u, v)];
  }

  const std::vector<long long>& raw() const { return counts_; }

 private:
  static std::size_t index_of(const PhysicalTopology& topo, NodeId u, NodeId v) {
    const int idx = topo.link_index(u, v);
    if (idx < 0)
      fail(errc::not_physically_adjacent,
           "{" + std::to_string(u) + "," + std::to_string(v) + "} is not a physical link");
    return static_cast<std::size_t>(idx);
  }

  std::vector<long long> counts_;
};

}  // namespace qnetsim
