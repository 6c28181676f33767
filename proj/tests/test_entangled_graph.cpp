#include <catch2/catch_amalgamated.hpp>

#include "qnetsim/entangled_graph.hpp"
#include "qnetsim/topology.hpp"

using qnetsim::EdgeKind;
using qnetsim::EntangledGraph;
using qnetsim::errc;
using qnetsim::Error;
using qnetsim::HistoricalCounts;
using qnetsim::PhysicalTopology;

namespace {

PhysicalTopology line5() {
  // 1-2-3-4-5 path
  return PhysicalTopology::from_edges(
      5, {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 4}, std::pair{4, 5}});
}

}  // namespace

TEST_CASE("ensure_entangled creates once and then no-ops", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);

  const auto [id, created] = g.ensure_entangled(topo, hc, 2, 1, 1);
  REQUIRE(created);
  REQUIRE(g.edge(id).kind == EdgeKind::physical);
  REQUIRE(g.edge(id).u == 1);  // endpoints normalised to u < v
  REQUIRE(g.edge(id).v == 2);
  REQUIRE(g.edge(id).usage_frequency == 1);
  REQUIRE(hc.at(topo, 1, 2) == 1);

  const auto [id2, created2] = g.ensure_entangled(topo, hc, 1, 2, 5);
  REQUIRE_FALSE(created2);
  REQUIRE(id2 == id);
  REQUIRE(g.edge(id).usage_frequency == 1);  // untouched
  REQUIRE(hc.at(topo, 1, 2) == 1);           // history only counts creations
  REQUIRE(g.edge_count() == 1);
}

TEST_CASE("ensure_entangled rejects non-adjacent pairs", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  try {
    g.ensure_entangled(topo, hc, 1, 3, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::not_physically_adjacent);
  }
}

TEST_CASE("swap products derive their kind from physical adjacency",
          "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  g.ensure_entangled(topo, hc, 1, 2, 1);
  g.ensure_entangled(topo, hc, 2, 3, 1);

  const int virt = g.insert_swap_product(topo, 1, 3, 2);
  REQUIRE(g.edge(virt).kind == EdgeKind::virtual_);
  REQUIRE(g.edge(virt).usage_frequency == 0);

  // direct API use on an adjacent pair keeps the graph kind-consistent
  const int phys = g.insert_swap_product(topo, 3, 4, 2);
  REQUIRE(g.edge(phys).kind == EdgeKind::physical);
  REQUIRE_NOTHROW(g.validate_invariants(topo));
}

TEST_CASE("duplicate edges are rejected", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  g.ensure_entangled(topo, hc, 1, 2, 1);
  try {
    g.insert_swap_product(topo, 2, 1, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::duplicate_target_edge);
  }
}

TEST_CASE("degree decomposition holds per node", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  g.ensure_entangled(topo, hc, 1, 2, 1);
  g.ensure_entangled(topo, hc, 2, 3, 1);
  g.insert_swap_product(topo, 1, 3, 1);  // virtual
  g.insert_swap_product(topo, 1, 4, 1);  // virtual

  REQUIRE(g.degree(1) == 3);
  REQUIRE(g.physical_degree(1) == 1);
  REQUIRE(g.virtual_degree(1) == 2);
  for (int j = 1; j <= 5; ++j)
    REQUIRE(g.degree(j) == g.physical_degree(j) + g.virtual_degree(j));
  REQUIRE(qnetsim::entangled_degree(g, 1) == 3);

  REQUIRE(g.adjacency(1).test(2));
  REQUIRE(g.adjacency(1).test(3));
  REQUIRE(g.adjacency(1).test(4));
  REQUIRE_FALSE(g.adjacency(1).test(5));
  REQUIRE_NOTHROW(g.validate_invariants(topo));
}

TEST_CASE("max frequency trackers follow increments", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  const auto [p, cp] = g.ensure_entangled(topo, hc, 1, 2, 1);
  g.ensure_entangled(topo, hc, 2, 3, 1);
  const int v = g.insert_swap_product(topo, 1, 3, 1);

  REQUIRE(g.max_frequency(EdgeKind::physical) == 1);
  REQUIRE(g.max_frequency(EdgeKind::virtual_) == 0);
  g.increment_frequency(v);
  g.increment_frequency(v);
  REQUIRE(g.max_frequency(EdgeKind::virtual_) == 2);
  g.increment_frequency(p);
  REQUIRE(g.max_frequency(EdgeKind::physical) == 2);
  (void)cp;
}

TEST_CASE("edge lookup validates ids and pairs", "[entangled_graph]") {
  const auto topo = line5();
  HistoricalCounts hc(topo);
  EntangledGraph g(5);
  REQUIRE_THROWS_AS(g.edge(1), Error);
  const auto [id, created] = g.ensure_entangled(topo, hc, 4, 5, 1);
  (void)created;
  REQUIRE_THROWS_AS(g.edge(0), Error);
  REQUIRE_THROWS_AS(g.edge(2), Error);
  REQUIRE(g.find(5, 4) != nullptr);
  REQUIRE(g.find(5, 4)->id == id);
  REQUIRE(g.find(1, 5) == nullptr);
  REQUIRE(g.has_edge(4, 5));
  REQUIRE_FALSE(g.has_edge(1, 4));
}
