#include "slotsim/protocol.hpp"

#include <cstdlib>

#include "slotsim/error.hpp"

namespace slotsim {

std::int64_t beacon_tx_time(const PhyConfig& phy, std::int64_t origin_ticks, std::int64_t frame) {
  return origin_ticks + frame * frame_duration(phy);
}

bool device_on_beacon(SyncState& state, const BeaconPayload& beacon,
                      std::int64_t measured_arrival) {
  if (state.anchored && beacon.frame_index <= state.anchor_frame) {
    state.stale_beacons++;
    return false;
  }
  state.anchored = true;
  state.anchor_frame = beacon.frame_index;
  state.anchor_arrival = measured_arrival;
  state.anchor_beacon_tx = beacon.tx_radio_time;
  return true;
}

std::int64_t compute_slot_boundary(const SyncState& state, const PhyConfig& phy, SlotAddress at,
                                   bool compensate) {
  if (!state.anchored) throw Error("compute_slot_boundary before first beacon");
  if (at.slot < 0 || at.slot >= phy.slots_per_frame) {
    throw Error("slot index out of range: " + std::to_string(at.slot));
  }
  std::int64_t t = state.anchor_arrival +
                   (at.frame - state.anchor_frame) * frame_duration(phy) +
                   static_cast<std::int64_t>(at.slot) * slot_duration(phy);
  if (compensate && state.d_est) t -= 2 * *state.d_est;
  return t;
}

PtpResult ptp_update(std::int64_t t1, std::int64_t s00k, std::int64_t sijl, std::int64_t t02) {
  const std::int64_t down = t1 - s00k;   // o + d_downlink
  const std::int64_t up = t02 - sijl;    // d_uplink - o
  PtpResult r;
  r.d_raw = round_div_half_up(down + up, 2);
  r.d_est = r.d_raw < 0 ? 0 : r.d_raw;
  r.o_est = round_div_half_up(down - up, 2);
  return r;
}

std::optional<PtpResult> consume_echo(SyncState& state, std::int64_t t02, const PhyConfig& phy) {
  if (!state.anchored) throw Error("consume_echo before first beacon");
  const std::int64_t window = slot_duration(phy) / 4;
  for (auto it = state.pending.rbegin(); it != state.pending.rend(); ++it) {
    const PtpResult r = ptp_update(state.anchor_arrival, state.anchor_beacon_tx,
                                   it->tx_radio_time, t02);
    if (std::llabs(r.d_raw) <= window) {
      // Drop the matched entry and everything older; newer ones stay pending.
      state.pending.erase(state.pending.begin(), it.base());
      state.ptp_rounds++;
      if (r.d_raw < 0) state.negative_d++;
      return r;
    }
  }
  state.unmatched_echoes++;
  return std::nullopt;
}

std::int64_t estimate_ap_time(std::int64_t local_radio_time, Duration o_est) {
  return local_radio_time - o_est;
}

std::int64_t schedule_synchronized_event(std::int64_t t_event_global, Duration o_est) {
  return t_event_global + o_est;
}

std::int64_t drift_metric(std::int64_t first_arrival, std::int64_t frame_k,
                          std::int64_t observed_arrival, const PhyConfig& phy) {
  const std::int64_t expected = first_arrival + frame_k * frame_duration(phy);
  return round_div_half_up(expected - observed_arrival, sample_period_ns(phy));
}

}  // namespace slotsim
