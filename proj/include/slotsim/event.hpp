#pragma once

#include <cstdint>

#include "slotsim/protocol.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

enum class EventKind : std::uint8_t {
  BeaconTx,        // AP wake to prepare the beacon for at.frame
  TxTimerFire,     // host wake to prepare a data packet for at
  RadioSubmit,     // timestamped packet reaches the radio's egress queue
  RadioTxFire,     // radio emits the packet at its commanded timestamp
  RadioRxArrival,  // first sample reaches a receiving radio
  HostRxDelivery,  // decoded packet reaches the receiving host
  EventSyncFire,   // a node's synchronized-event timer expires
  Probe,           // startup round-trip probe (trace only)
  MetricsFlush,    // end of run (trace only)
};

const char* event_kind_name(EventKind k);

// Queue entry. Ordering is (due, seq): seq breaks ties in insertion order so
// a run replays identically.
struct Event {
  std::int64_t due = 0;  // global true ns
  std::uint64_t seq = 0;
  EventKind kind = EventKind::BeaconTx;
  NodeId node = 0;          // the node acting or receiving
  std::int64_t packet = -1; // arena index, -1 if none
  SlotAddress at{};
  std::int64_t aux = 0;  // kind-specific (measured arrival for deliveries)
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.due != b.due) return a.due > b.due;
    return a.seq > b.seq;
  }
};

}  // namespace slotsim
