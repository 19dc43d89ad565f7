#include "slotsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "slotsim/error.hpp"

namespace slotsim {

namespace {

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; i++) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; i++) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

// Echo list carried in the app field of AP replies: u32 count, then
// (u32 sender, i64 ping host time) per entry.
std::vector<std::uint8_t> serialize_echoes(const std::vector<std::pair<NodeId, std::int64_t>>& q) {
  std::vector<std::uint8_t> out;
  append_u32(out, static_cast<std::uint32_t>(q.size()));
  for (const auto& [sender, t] : q) {
    append_u32(out, sender);
    append_i64(out, t);
  }
  return out;
}

std::vector<std::pair<NodeId, std::int64_t>> parse_echoes(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  auto read_u32 = [&]() {
    if (pos + 4 > bytes.size()) throw Error("truncated echo list");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= static_cast<std::uint32_t>(bytes[pos++]) << (8 * i);
    return v;
  };
  auto read_i64 = [&]() {
    if (pos + 8 > bytes.size()) throw Error("truncated echo list");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(bytes[pos++]) << (8 * i);
    return static_cast<std::int64_t>(v);
  };
  const std::uint32_t count = read_u32();
  std::vector<std::pair<NodeId, std::int64_t>> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; i++) {
    const NodeId sender = read_u32();
    const std::int64_t t = read_i64();
    out.emplace_back(sender, t);
  }
  return out;
}

bool contains_frame(const std::vector<std::int64_t>& frames, std::int64_t f) {
  return std::find(frames.begin(), frames.end(), f) != frames.end();
}

}  // namespace

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::BeaconTx: return "beacon_tx";
    case EventKind::TxTimerFire: return "tx_timer";
    case EventKind::RadioSubmit: return "radio_submit";
    case EventKind::RadioTxFire: return "radio_tx_fire";
    case EventKind::RadioRxArrival: return "radio_rx_arrival";
    case EventKind::HostRxDelivery: return "host_rx_delivery";
    case EventKind::EventSyncFire: return "event_sync_fire";
    case EventKind::Probe: return "probe";
    case EventKind::MetricsFlush: return "metrics_flush";
  }
  return "?";
}

Engine::Engine(Scenario scenario, std::ostream* trace_out) : sc_(std::move(scenario)), trace_(trace_out) {
  period_ = sample_period_ns(sc_.phy);
  slot_ns_ = slot_duration(sc_.phy);
  frame_ns_ = frame_duration(sc_.phy);
  airtime_ns_ = airtime_samples(sc_.phy) * period_;
  origin_ = sc_.first_beacon_ns;
  ap_id_ = sc_.ap().id;

  report_.scenario_name = sc_.name;
  report_.seed = sc_.seed;
  report_.ap_node = ap_id_;
  report_.rtt = SampleStore(sc_.metrics.raw_sample_cap);

  for (const NodeConfig& cfg : sc_.nodes) {
    NodeRuntime n;
    n.cfg = cfg;
    n.radio_clock = ClockModel{Axis::radio(cfg.id), cfg.radio_offset_ns,
                               static_cast<std::int64_t>(std::llround(cfg.drift_ppm * 1000.0)), 0};
    n.host_clock = ClockModel{Axis::host(cfg.id), cfg.host_offset_ns,
                              static_cast<std::int64_t>(std::llround(cfg.host_drift_ppm * 1000.0)),
                              0};
    n.counter = SampleCounter{radio_time_of(n.radio_clock, TimeInstant::at(Axis::global(), 0)),
                              period_};
    n.det = sc_.detection_for(cfg);
    n.jit = sc_.jit_for(cfg);
    n.rng_link_tx = make_stream(sc_.seed, cfg.id, StreamPurpose::LinkTx);
    n.rng_link_rx = make_stream(sc_.seed, cfg.id, StreamPurpose::LinkRx);
    for (const auto& [slot, owner] : sc_.schedule) {
      if (owner == cfg.id) n.owned_slots.push_back(slot);
    }

    if (n.jit.t_adv_override_ns > 0) {
      n.t_adv = n.jit.t_adv_override_ns;
    } else {
      RngStream probe_tx = make_stream(sc_.seed, cfg.id, StreamPurpose::ProbeTx);
      RngStream probe_rx = make_stream(sc_.seed, cfg.id, StreamPurpose::ProbeRx);
      const RttEstimate est =
          probe_rtt(cfg.link_tx, cfg.link_rx, n.jit.n_probes, probe_tx, probe_rx);
      n.t_adv = compute_t_adv(est, n.jit);
      if (trace_) {
        std::ostringstream d;
        d << "n=" << est.n << " rtt_mean=" << est.mean_ns << " rtt_dev=" << est.deviation_ns
          << " t_adv=" << n.t_adv;
        trace(Event{0, next_seq_++, EventKind::Probe, cfg.id}, d.str());
      }
    }
    if (cfg.id == ap_id_ && n.t_adv >= origin_) {
      throw ConfigError("first_beacon_ns must exceed the AP advance time (" +
                        std::to_string(n.t_adv) + " ns)");
    }
    report_.t_adv_ns[cfg.id] = n.t_adv;
    report_.node[cfg.id];  // materialize counters for every node
    nodes_.emplace(cfg.id, std::move(n));
  }

  if (sc_.horizon_frames > 0) {
    n_frames_ = sc_.horizon_frames;
    // one frame of slack so the last frame's arrivals can still deliver
    horizon_end_ = origin_ + (n_frames_ + 1) * frame_ns_;
  } else {
    n_frames_ = sc_.horizon_ns > origin_ ? (sc_.horizon_ns - origin_ - 1) / frame_ns_ + 1 : 0;
    horizon_end_ = sc_.horizon_ns;
  }
  report_.frames = n_frames_;

  if (n_frames_ > 0) {
    const NodeRuntime& ap = nodes_.at(ap_id_);
    push(Event{origin_ - ap.t_adv, next_seq_++, EventKind::BeaconTx, ap_id_, -1,
               SlotAddress{0, 0}});
    if (sc_.traffic == TrafficMode::Rtt) {
      NodeRuntime& aprt = nodes_.at(ap_id_);
      for (std::int32_t j : aprt.owned_slots) {
        const std::int64_t wake = ap_slot_boundary(SlotAddress{0, j}) - aprt.t_adv;
        push(Event{true_of_radio(aprt, wake), next_seq_++, EventKind::TxTimerFire, ap_id_, -1,
                   SlotAddress{0, j}});
      }
      aprt.timers_started = true;
    }
  }
  if (sc_.event_sync.enabled && sc_.event_sync.global_time_ns <= horizon_end_) {
    // The AP's own clock is the reference, so it fires at the target directly.
    push(Event{sc_.event_sync.global_time_ns, next_seq_++, EventKind::EventSyncFire, ap_id_});
    nodes_.at(ap_id_).event_armed = true;
  }
}

Engine::NodeRuntime& Engine::rt(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error("unknown node id " + std::to_string(id));
  return it->second;
}

std::int64_t Engine::radio_now(const NodeRuntime& n, std::int64_t true_ns) const {
  return radio_time_of(n.radio_clock, TimeInstant::at(Axis::global(), true_ns)).ticks;
}

std::int64_t Engine::true_of_radio(const NodeRuntime& n, std::int64_t radio_ns) const {
  return true_time_of(n.radio_clock, TimeInstant::at(Axis::radio(n.cfg.id), radio_ns)).ticks;
}

std::int64_t Engine::host_now(const NodeRuntime& n, std::int64_t true_ns) const {
  return radio_time_of(n.host_clock, TimeInstant::at(Axis::global(), true_ns)).ticks;
}

std::int64_t Engine::true_of_host(const NodeRuntime& n, std::int64_t host_ns) const {
  return true_time_of(n.host_clock, TimeInstant::at(Axis::host(n.cfg.id), host_ns)).ticks;
}

std::int64_t Engine::ap_slot_boundary(SlotAddress at) const {
  return origin_ + at.frame * frame_ns_ + at.slot * slot_ns_;
}

std::int64_t Engine::node_slot_boundary(const NodeRuntime& n, SlotAddress at) const {
  if (n.cfg.id == ap_id_) return ap_slot_boundary(at);
  return compute_slot_boundary(n.sync, sc_.phy, at, sc_.compensation);
}

void Engine::push(Event ev) { queue_.push(ev); }

void Engine::trace(const Event& ev, const std::string& detail) {
  if (!trace_) return;
  (*trace_) << ev.due << ' ' << ev.seq << ' ' << ev.node << ' ' << event_kind_name(ev.kind);
  if (!detail.empty()) (*trace_) << ' ' << detail;
  (*trace_) << '\n';
}

void Engine::start_node_timers(NodeRuntime& n, std::int64_t first_frame, std::int64_t not_before) {
  for (std::int32_t j : n.owned_slots) {
    // A wake time can only be set once the schedule is known, so slots whose
    // advance window already passed are deferred to the next frame.
    SlotAddress at{first_frame, j};
    std::int64_t wake = true_of_radio(n, node_slot_boundary(n, at) - n.t_adv);
    while (wake < not_before && at.frame < n_frames_) {
      at.frame++;
      wake = true_of_radio(n, node_slot_boundary(n, at) - n.t_adv);
    }
    if (at.frame >= n_frames_) continue;
    push(Event{wake, next_seq_++, EventKind::TxTimerFire, n.cfg.id, -1, at});
  }
}

void Engine::submit_packet(NodeRuntime& n, std::int64_t pkt, std::int64_t wake_true) {
  const Duration dtx = draw_link_delay(n.cfg.link_tx, n.rng_link_tx);
  const std::int64_t submit_host = host_now(n, wake_true) + n.jit.prep_allowance_ns + dtx;
  push(Event{true_of_host(n, submit_host), next_seq_++, EventKind::RadioSubmit, n.cfg.id, pkt,
             arena_[pkt].at});
}

std::int64_t Engine::delivery_time(NodeRuntime& rx, std::int64_t arrival_true) {
  // Decode completes once the whole packet is captured, then the radio->host
  // leg adds its own delay.
  const std::int64_t end_true = true_of_radio(rx, radio_now(rx, arrival_true) + airtime_ns_);
  const Duration drx = draw_link_delay(rx.cfg.link_rx, rx.rng_link_rx);
  return true_of_host(rx, host_now(rx, end_true) + drx);
}

void Engine::on_beacon_timer(const Event& ev) {
  if (ev.at.frame >= n_frames_) return;
  if (ev.at.frame + 1 < n_frames_) {
    push(Event{ev.due + frame_ns_, next_seq_++, EventKind::BeaconTx, ap_id_, -1,
               SlotAddress{ev.at.frame + 1, 0}});
  }
  NodeRuntime& ap = rt(ap_id_);
  PacketRecord rec;
  rec.is_beacon = true;
  rec.sender = ap_id_;
  rec.at = SlotAddress{ev.at.frame, 0};
  rec.beacon.frame_index = ev.at.frame;
  rec.beacon.tx_radio_time = beacon_tx_time(sc_.phy, origin_, ev.at.frame);
  rec.beacon.feedback = std::move(ap.feedback_accum);
  ap.feedback_accum.clear();
  rec.gen_radio_ns = radio_now(ap, ev.due);
  rec.tx_radio_ns = rec.beacon.tx_radio_time;
  arena_.push_back(std::move(rec));
  const auto idx = static_cast<std::int64_t>(arena_.size()) - 1;
  counters(ap_id_).submitted++;
  if (trace_) {
    trace(ev, "frame=" + std::to_string(ev.at.frame) +
                  " feedback=" + std::to_string(arena_[idx].beacon.feedback.size()));
  }
  submit_packet(ap, idx, ev.due);
}

void Engine::on_tx_timer(const Event& ev) {
  if (ev.at.frame >= n_frames_) return;
  NodeRuntime& n = rt(ev.node);

  // The wake was scheduled against an older boundary estimate. If a beacon
  // has since pushed the boundary later, sleep on: generating now would age
  // the payload beyond the advance budget for no benefit.
  const std::int64_t ideal_due = true_of_radio(n, node_slot_boundary(n, ev.at) - n.t_adv);
  if (ideal_due > ev.due) {
    push(Event{ideal_due, next_seq_++, EventKind::TxTimerFire, ev.node, -1, ev.at});
    return;
  }

  if (ev.at.frame + 1 < n_frames_) {
    const SlotAddress next{ev.at.frame + 1, ev.at.slot};
    std::int64_t due_next = true_of_radio(n, node_slot_boundary(n, next) - n.t_adv);
    if (due_next <= ev.due) due_next = ev.due + 1;
    push(Event{due_next, next_seq_++, EventKind::TxTimerFire, ev.node, -1, next});
  }

  const bool is_ap = ev.node == ap_id_;
  std::vector<std::pair<NodeId, std::int64_t>> echoes;
  if (is_ap) {
    if (n.echo_queue.empty()) {
      if (trace_) trace(ev, "idle");
      return;
    }
    echoes.assign(n.echo_queue.begin(), n.echo_queue.end());
    n.echo_queue.clear();
  }

  PacketRecord rec;
  rec.sender = ev.node;
  rec.at = ev.at;
  rec.data.sender = ev.node;
  rec.data.tx_radio_time = node_slot_boundary(n, ev.at);
  rec.data.host_tx_time = host_now(n, ev.due) + n.jit.prep_allowance_ns;
  if (is_ap) rec.data.app = serialize_echoes(echoes);
  rec.gen_radio_ns = radio_now(n, ev.due);
  rec.tx_radio_ns = rec.data.tx_radio_time;
  arena_.push_back(std::move(rec));
  const auto idx = static_cast<std::int64_t>(arena_.size()) - 1;

  if (!is_ap) {
    n.sync.pending.push_back(PendingUplink{ev.at, arena_[idx].tx_radio_ns});
    while (n.sync.pending.size() > SyncState::kMaxPending) n.sync.pending.pop_front();
  }
  counters(ev.node).submitted++;
  if (trace_) {
    trace(ev, "frame=" + std::to_string(ev.at.frame) + " slot=" + std::to_string(ev.at.slot) +
                  " pkt=" + std::to_string(idx));
  }
  submit_packet(n, idx, ev.due);
}

void Engine::on_radio_submit(const Event& ev) {
  NodeRuntime& n = rt(ev.node);
  PacketRecord& pkt = arena_[ev.packet];
  const std::int64_t now_radio = radio_now(n, ev.due);
  const auto res = n.txq.enqueue(pkt.tx_radio_ns, static_cast<std::uint64_t>(ev.packet),
                                 now_radio, period_);
  switch (res) {
    case RadioTxQueue::Enqueue::Accepted:
      push(Event{true_of_radio(n, pkt.tx_radio_ns), next_seq_++, EventKind::RadioTxFire, ev.node,
                 ev.packet, pkt.at});
      if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " ts=" + std::to_string(pkt.tx_radio_ns));
      break;
    case RadioTxQueue::Enqueue::Late:
      counters(ev.node).late_drops++;
      if (!pkt.is_beacon) counters(ev.node).skipped_slots++;
      if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " late");
      break;
    case RadioTxQueue::Enqueue::Conflict:
      counters(ev.node).conflicts++;
      if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " conflict");
      break;
  }
}

void Engine::on_radio_fire(const Event& ev) {
  NodeRuntime& n = rt(ev.node);
  PacketRecord& pkt = arena_[ev.packet];
  n.txq.pop(pkt.tx_radio_ns);
  pkt.fire_true_ns = ev.due;
  NodeCounters& c = counters(ev.node);
  c.transmitted++;
  const Duration freshness = pkt.tx_radio_ns - pkt.gen_radio_ns;
  c.max_freshness_ns = std::max(c.max_freshness_ns, freshness);
  if (freshness > n.t_adv + period_) c.freshness_violations++;
  if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " fresh=" + std::to_string(freshness));

  const bool to_all_devices = pkt.is_beacon || ev.node == ap_id_;
  for (auto& [rid, rx] : nodes_) {
    if (to_all_devices ? rid == ap_id_ : rid != ap_id_) continue;
    const std::int64_t arrival = ev.due + propagation_delay(sc_.propagation, ev.node, rid);
    report_.expected_deliveries++;
    push(Event{arrival, next_seq_++, EventKind::RadioRxArrival, rid, ev.packet, pkt.at});
  }
}

void Engine::on_radio_arrival(const Event& ev) {
  NodeRuntime& n = rt(ev.node);
  PacketRecord& pkt = arena_[ev.packet];
  NodeCounters& c = counters(ev.node);

  if (pkt.is_beacon && contains_frame(n.cfg.forced_beacon_miss_frames, pkt.beacon.frame_index)) {
    c.missed_detections++;
    c.missed_beacons++;
    if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " forced_miss");
    return;
  }

  auto jit_it = n.det_jitter.find(pkt.sender);
  if (jit_it == n.det_jitter.end()) {
    jit_it = n.det_jitter
                 .emplace(pkt.sender, make_stream(sc_.seed, ev.node, StreamPurpose::DetectJitter,
                                                  pkt.sender))
                 .first;
    n.det_miss.emplace(pkt.sender,
                       make_stream(sc_.seed, ev.node, StreamPurpose::DetectMiss, pkt.sender));
  }
  const DetectionModel model{n.det.miss_probability, n.det.jitter_samples};
  const TimeInstant arrival_radio = TimeInstant::at(Axis::radio(ev.node), radio_now(n, ev.due));
  const DetectionOutcome out = detect_arrival(model, arrival_radio, n.counter,
                                              n.det_miss.at(pkt.sender), jit_it->second);
  if (out.missed) {
    c.missed_detections++;
    if (pkt.is_beacon) c.missed_beacons++;
    if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet) + " missed");
    return;
  }
  const std::int64_t measured = out.measured_arrival.ticks;

  if (!pkt.is_beacon && ev.node == ap_id_) {
    if (measured < n.last_rx_airtime_end) c.overlaps++;
    n.last_rx_airtime_end = std::max(n.last_rx_airtime_end, measured + airtime_ns_);
    const std::int64_t expected = ap_slot_boundary(pkt.at);
    const std::int64_t dr = round_div_half_up(measured - expected, period_);
    if (pkt.at.frame >= sc_.metrics.warmup_frames) record_alignment(report_, pkt.sender, dr);
    if (trace_) {
      trace(ev, "pkt=" + std::to_string(ev.packet) + " measured=" + std::to_string(measured) +
                    " dr=" + std::to_string(dr));
    }
  } else if (trace_) {
    trace(ev, "pkt=" + std::to_string(ev.packet) + " measured=" + std::to_string(measured));
  }

  push(Event{delivery_time(n, ev.due), next_seq_++, EventKind::HostRxDelivery, ev.node, ev.packet,
             pkt.at, measured});
}

void Engine::on_host_delivery(const Event& ev) {
  NodeRuntime& n = rt(ev.node);
  PacketRecord& pkt = arena_[ev.packet];
  counters(ev.node).delivered++;
  if (trace_) trace(ev, "pkt=" + std::to_string(ev.packet));
  if (pkt.is_beacon) {
    handle_beacon_delivery(n, ev);
  } else {
    handle_data_delivery(n, ev);
  }
}

void Engine::handle_beacon_delivery(NodeRuntime& dev, const Event& ev) {
  const PacketRecord& pkt = arena_[ev.packet];
  const BeaconPayload& b = pkt.beacon;
  const std::int64_t measured = ev.aux;
  NodeCounters& c = counters(dev.cfg.id);

  if (!dev.sync.anchored || sc_.resync_on_beacon) {
    if (device_on_beacon(dev.sync, b, measured) && c.first_anchor_frame < 0) {
      c.first_anchor_frame = b.frame_index;
    }
  }

  if (!dev.drift_ref_set) {
    dev.drift_ref_set = true;
    dev.drift_ref_frame = b.frame_index;
    dev.drift_ref_arrival = measured;
  }
  report_.drift_trace[dev.cfg.id].emplace_back(
      b.frame_index,
      drift_metric(dev.drift_ref_arrival, b.frame_index - dev.drift_ref_frame, measured, sc_.phy));

  for (const FeedbackEntry& f : b.feedback) {
    if (f.device != dev.cfg.id) continue;
    if (const auto res = consume_echo(dev.sync, f.t02, sc_.phy)) {
      dev.sync.d_est = res->d_est;
      dev.sync.o_est = res->o_est;
      if (trace_) {
        trace(ev, "ptp d=" + std::to_string(res->d_est) + " o=" + std::to_string(res->o_est));
      }
    }
  }

  if (sc_.event_sync.enabled && !dev.event_armed && ev.due >= sc_.event_sync.arm_time_ns &&
      dev.sync.o_est) {
    const std::int64_t local =
        schedule_synchronized_event(sc_.event_sync.global_time_ns, *dev.sync.o_est);
    push(Event{true_of_radio(dev, local), next_seq_++, EventKind::EventSyncFire, dev.cfg.id});
    dev.event_armed = true;
  }

  if (!dev.timers_started && dev.sync.anchored && !dev.owned_slots.empty()) {
    start_node_timers(dev, dev.sync.anchor_frame + 1, ev.due);
    dev.timers_started = true;
  }
}

void Engine::handle_data_delivery(NodeRuntime& n, const Event& ev) {
  PacketRecord& pkt = arena_[ev.packet];
  if (n.cfg.id == ap_id_) {
    n.feedback_accum.push_back(FeedbackEntry{pkt.sender, ev.aux});
    if (sc_.traffic == TrafficMode::Rtt) {
      n.echo_queue.emplace_back(pkt.sender, pkt.data.host_tx_time);
    }
    return;
  }
  // AP reply: pick out our own echoes and close the loop.
  if (pkt.data.app.empty()) return;
  const std::int64_t t_prx = host_now(n, ev.due);
  for (const auto& [sender, t_ptx] : parse_echoes(pkt.data.app)) {
    if (sender != n.cfg.id) continue;
    const std::int64_t rtt = t_prx - t_ptx;
    if (pkt.at.frame < sc_.metrics.warmup_frames) continue;
    report_.rtt.add(rtt);
    if (report_.rtt_rows.size() < sc_.metrics.rtt_csv_cap) {
      report_.rtt_rows.push_back(RttRow{rtt_index_, n.cfg.id, t_ptx, t_prx, rtt});
    } else {
      report_.rtt_rows_dropped++;
    }
    rtt_index_++;
    if (trace_) trace(ev, "rtt=" + std::to_string(rtt));
  }
}

void Engine::on_event_sync_fire(const Event& ev) {
  report_.event_fire_true_ns[ev.node] = ev.due;
  if (trace_) trace(ev, "");
}

MetricsReport Engine::run() {
  while (!queue_.empty() && queue_.top().due <= horizon_end_) {
    const Event ev = queue_.top();
    queue_.pop();
    switch (ev.kind) {
      case EventKind::BeaconTx: on_beacon_timer(ev); break;
      case EventKind::TxTimerFire: on_tx_timer(ev); break;
      case EventKind::RadioSubmit: on_radio_submit(ev); break;
      case EventKind::RadioTxFire: on_radio_fire(ev); break;
      case EventKind::RadioRxArrival: on_radio_arrival(ev); break;
      case EventKind::HostRxDelivery: on_host_delivery(ev); break;
      case EventKind::EventSyncFire: on_event_sync_fire(ev); break;
      case EventKind::Probe:
      case EventKind::MetricsFlush: break;
    }
  }

  while (!queue_.empty()) {
    const Event ev = queue_.top();
    queue_.pop();
    switch (ev.kind) {
      case EventKind::RadioSubmit:
      case EventKind::RadioTxFire:
        report_.in_flight_submissions++;
        break;
      case EventKind::RadioRxArrival:
      case EventKind::HostRxDelivery:
        report_.in_flight_deliveries++;
        break;
      default: break;
    }
  }

  for (auto& [id, n] : nodes_) {
    NodeCounters& c = report_.node[id];
    c.stale_beacons = n.sync.stale_beacons;
    c.negative_d = n.sync.negative_d;
    c.unmatched_echoes = n.sync.unmatched_echoes;
    c.ptp_rounds = n.sync.ptp_rounds;
  }
  report_.horizon_end_true_ns = horizon_end_;
  trace(Event{horizon_end_, next_seq_++, EventKind::MetricsFlush, ap_id_}, "");
  return std::move(report_);
}

MetricsReport run_scenario(const Scenario& scenario, std::ostream* trace) {
  Engine engine(scenario, trace);
  return engine.run();
}

}  // namespace slotsim
