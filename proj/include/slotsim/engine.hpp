#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "slotsim/channel.hpp"
#include "slotsim/clock.hpp"
#include "slotsim/event.hpp"
#include "slotsim/jit.hpp"
#include "slotsim/metrics.hpp"
#include "slotsim/protocol.hpp"
#include "slotsim/rng.hpp"
#include "slotsim/scenario.hpp"

namespace slotsim {

// One packet in flight. Payloads stay structured; the app field of data
// packets carries the serialized echo list on AP replies.
struct PacketRecord {
  bool is_beacon = false;
  NodeId sender = 0;
  SlotAddress at{};
  BeaconPayload beacon;
  DataPacketPayload data;
  std::int64_t gen_radio_ns = 0;  // sender radio ticks when the host woke
  std::int64_t tx_radio_ns = 0;   // commanded fire timestamp, sender radio ticks
  std::int64_t fire_true_ns = -1;
};

// Discrete-event simulation of one scenario: an AP beaconing in slot 0 of a
// fixed TDMA frame, devices anchoring their slot boundaries on detected
// beacon arrivals, and just-in-time timestamped transmission through each
// node's host->radio link. Runs to the configured horizon and returns the
// collected metrics. Passing a stream records one line per event.
class Engine {
 public:
  explicit Engine(Scenario scenario, std::ostream* trace = nullptr);

  MetricsReport run();

  const Scenario& scenario() const { return sc_; }

 private:
  struct NodeRuntime {
    NodeConfig cfg;
    ClockModel radio_clock;
    ClockModel host_clock;
    SampleCounter counter;
    DetectionConfig det;
    JitConfig jit;
    Duration t_adv = 0;
    SyncState sync;
    RadioTxQueue txq;
    RngStream rng_link_tx;
    RngStream rng_link_rx;
    std::map<NodeId, RngStream> det_jitter;  // keyed by transmitting peer
    std::map<NodeId, RngStream> det_miss;
    std::vector<std::int32_t> owned_slots;
    bool timers_started = false;
    bool event_armed = false;
    // drift bookkeeping (first accepted beacon as the reference)
    bool drift_ref_set = false;
    std::int64_t drift_ref_frame = 0;
    std::int64_t drift_ref_arrival = 0;
    // AP only
    std::vector<FeedbackEntry> feedback_accum;
    std::deque<std::pair<NodeId, std::int64_t>> echo_queue;  // (sender, t_ptx host ns)
    std::int64_t last_rx_airtime_end = std::numeric_limits<std::int64_t>::min();
  };

  NodeRuntime& rt(NodeId id);
  NodeCounters& counters(NodeId id) { return report_.node[id]; }

  std::int64_t radio_now(const NodeRuntime& n, std::int64_t true_ns) const;
  std::int64_t true_of_radio(const NodeRuntime& n, std::int64_t radio_ns) const;
  std::int64_t host_now(const NodeRuntime& n, std::int64_t true_ns) const;
  std::int64_t true_of_host(const NodeRuntime& n, std::int64_t host_ns) const;

  std::int64_t ap_slot_boundary(SlotAddress at) const;  // AP radio ticks
  std::int64_t node_slot_boundary(const NodeRuntime& n, SlotAddress at) const;

  void push(Event ev);
  void trace(const Event& ev, const std::string& detail);

  void start_node_timers(NodeRuntime& n, std::int64_t first_frame, std::int64_t not_before);
  void submit_packet(NodeRuntime& n, std::int64_t pkt, std::int64_t wake_true);
  std::int64_t delivery_time(NodeRuntime& rx, std::int64_t arrival_true);

  void on_beacon_timer(const Event& ev);
  void on_tx_timer(const Event& ev);
  void on_radio_submit(const Event& ev);
  void on_radio_fire(const Event& ev);
  void on_radio_arrival(const Event& ev);
  void on_host_delivery(const Event& ev);
  void on_event_sync_fire(const Event& ev);

  void handle_beacon_delivery(NodeRuntime& dev, const Event& ev);
  void handle_data_delivery(NodeRuntime& n, const Event& ev);

  Scenario sc_;
  std::ostream* trace_ = nullptr;

  Duration period_ = 0;
  Duration slot_ns_ = 0;
  Duration frame_ns_ = 0;
  Duration airtime_ns_ = 0;
  std::int64_t origin_ = 0;  // first beacon boundary, AP radio == true ns
  std::int64_t n_frames_ = 0;
  std::int64_t horizon_end_ = 0;

  NodeId ap_id_ = 0;
  std::map<NodeId, NodeRuntime> nodes_;
  std::vector<PacketRecord> arena_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t rtt_index_ = 0;

  MetricsReport report_;
};

MetricsReport run_scenario(const Scenario& scenario, std::ostream* trace = nullptr);

}  // namespace slotsim
