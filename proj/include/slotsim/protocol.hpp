#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "slotsim/clock.hpp"
#include "slotsim/phy.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

// Slot j of frame l.
struct SlotAddress {
  std::int64_t frame = 0;
  std::int32_t slot = 0;

  friend bool operator==(const SlotAddress& a, const SlotAddress& b) {
    return a.frame == b.frame && a.slot == b.slot;
  }
};

struct FeedbackEntry {
  NodeId device = 0;
  std::int64_t t02 = 0;  // AP radio ticks: measured arrival of that device's last uplink
};

struct ScheduleDirective {
  std::uint16_t slot = 0;
  NodeId owner = 0;
};

struct BeaconPayload {
  std::int64_t frame_index = 0;
  std::int64_t tx_radio_time = 0;  // AP radio ticks; always on the AP sample grid
  std::vector<FeedbackEntry> feedback;
  std::vector<ScheduleDirective> directives;
};

struct DataPacketPayload {
  NodeId sender = 0;
  std::int64_t tx_radio_time = 0;  // sender radio ticks (the tagged slot boundary)
  std::int64_t host_tx_time = 0;   // sender host ticks at generation
  std::vector<std::uint8_t> app;
};

// One of our transmissions whose AP-side arrival echo is still outstanding.
struct PendingUplink {
  SlotAddress at;
  std::int64_t tx_radio_time = 0;  // s_ijl
};

// Device-side synchronization state. The anchor is the most recent accepted
// beacon; slot boundaries extrapolate from it. Offset convention throughout:
// o_est = device clock minus AP clock.
struct SyncState {
  bool anchored = false;
  std::int64_t anchor_frame = -1;
  std::int64_t anchor_arrival = 0;    // device radio ticks, on the sample grid
  std::int64_t anchor_beacon_tx = 0;  // AP radio ticks, from the beacon payload
  std::optional<Duration> d_est;      // one-way propagation estimate
  std::optional<Duration> o_est;      // device-minus-AP clock offset estimate

  // Newest at back. Sized to outlive the generation-to-echo latency: with a
  // large advance an uplink is generated up to a frame before its slot and
  // its echo can miss one beacon, so up to three frames of generations (at
  // up to 18 owned slots each) may pile up before the echo is consumed.
  std::deque<PendingUplink> pending;
  static constexpr std::size_t kMaxPending = 64;

  std::uint64_t stale_beacons = 0;
  std::uint64_t negative_d = 0;
  std::uint64_t unmatched_echoes = 0;
  std::uint64_t ptp_rounds = 0;
};

// AP-side beacon departure time for frame k: origin + k * frame. origin must
// sit on the AP sample grid so every beacon does too.
std::int64_t beacon_tx_time(const PhyConfig& phy, std::int64_t origin_ticks, std::int64_t frame);

// Accept (or reject as stale) a decoded beacon. measured_arrival is the
// detection timestamp on this device's sample grid. Returns true if the
// anchor advanced.
bool device_on_beacon(SyncState& state, const BeaconPayload& beacon,
                      std::int64_t measured_arrival);

// Boundary of slot `at` on the device radio axis, extrapolated from the
// anchor; with compensate, transmit 2*d_est early so the packet lands on the
// AP's own grid. Requires an anchor.
std::int64_t compute_slot_boundary(const SyncState& state, const PhyConfig& phy, SlotAddress at,
                                   bool compensate);

struct PtpResult {
  Duration d_raw = 0;  // before the non-negativity clamp
  Duration d_est = 0;
  Duration o_est = 0;  // device minus AP
};

// Three-way handshake solution:
//   d = ((t1 - s00k) + (t02 - sijl)) / 2
//   o = ((t1 - s00k) - (t02 - sijl)) / 2
// Symmetric path delays recover both exactly; asymmetry biases o by half the
// difference. d is clamped at 0 (d_raw keeps the sign for diagnostics).
PtpResult ptp_update(std::int64_t t1, std::int64_t s00k, std::int64_t sijl, std::int64_t t02);

// Match an echoed t02 against the pending uplinks, closing the handshake with
// the beacon that carried the echo (the current anchor). At most one candidate
// can yield a plausible one-way delay (|d_raw| <= slot/4; distinct candidates
// differ by >= slot/2), so the match is unambiguous. Consumes the matched
// entry and everything older. Returns nullopt (and counts) if nothing fits.
std::optional<PtpResult> consume_echo(SyncState& state, std::int64_t t02, const PhyConfig& phy);

// AP-clock estimate for a local radio instant. With o_est = device - AP the
// AP clock reads local - o_est.
std::int64_t estimate_ap_time(std::int64_t local_radio_time, Duration o_est);

// Local radio instant at which an event scheduled for global (AP-clock) time
// t_event must fire: t_event + o_est.
std::int64_t schedule_synchronized_event(std::int64_t t_event_global, Duration o_est);

// Signed drift of beacon k's observed arrival against the frame-0 expectation,
// in whole samples: (first_arrival + k*frame - observed) / sample_period.
std::int64_t drift_metric(std::int64_t first_arrival, std::int64_t frame_k,
                          std::int64_t observed_arrival, const PhyConfig& phy);

}  // namespace slotsim
