#pragma once

#include <vector>

#include "qnetsim/entangled_graph.hpp"

namespace qnetsim {

enum class EventType { edge_created, swap, connection_completed, connection_failed };

inline const char* event_type_name(EventType t) {
  switch (t) {
    case EventType::edge_created: return "edge_created";
    case EventType::swap: return "swap";
    case EventType::connection_completed: return "connection_completed";
    case EventType::connection_failed: return "connection_failed";
  }
  return "unknown";
}

// Append-only protocol event. edge_created covers direct entanglements only;
// edges produced by swaps are reported through their swap event.
struct Event {
  long long step = 0;
  EventType type = EventType::edge_created;
  NodeId u = 0, v = 0;  // edge endpoints, or the requested pair
  int edge_id = 0;      // created edge (edge_created) / produced edge (swap)
  EdgeKind kind = EdgeKind::physical;
  NodeId via = 0;                              // swap
  int consumed_first = 0, consumed_second = 0;  // swap
  int edges_created = 0, swaps = 0;             // connection outcome tallies
};

using EventLog = std::vector<Event>;

}  // namespace qnetsim
