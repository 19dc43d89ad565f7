#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "slotsim/channel.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

struct RttEstimate {
  Duration mean_ns = 0;
  Duration deviation_ns = 0;  // sample standard deviation (n-1 denominator)
  std::int64_t n = 0;
};

struct JitConfig {
  double beta = 1.0;
  Duration prep_allowance_ns = 34 * 1000;
  Duration t_adv_override_ns = 0;  // 0 = derive from the probe estimate
  std::int64_t n_probes = 0;
  Duration probe_interval_ns = kNsPerMs;
};

// Startup host<->radio round-trip probe: n request/response pairs, one draw
// per direction each. Pacing does not influence the estimate.
RttEstimate probe_rtt(const LinkDelayModel& tx, const LinkDelayModel& rx, std::int64_t n_probes,
                      RngStream& tx_rng, RngStream& rx_rng);

// How early the host must hand a packet to the radio:
//   T_adv = delta_RTT + beta * sigma_RTT + prep_allowance
// unless the override pins it.
Duration compute_t_adv(const RttEstimate& est, const JitConfig& cfg);

// Timestamped egress queue of one radio. A packet is accepted only if its
// timestamp is at least one sample period ahead of the radio's clock at
// enqueue time; a timestamp already queued is a conflict (two packets cannot
// occupy one slot).
class RadioTxQueue {
 public:
  enum class Enqueue { Accepted, Late, Conflict };

  Enqueue enqueue(std::int64_t tx_radio_time, std::uint64_t packet_ref,
                  std::int64_t now_radio_time, Duration min_lead_ns);

  // Remove and return the packet queued for exactly this timestamp.
  std::optional<std::uint64_t> pop(std::int64_t tx_radio_time);

  std::size_t size() const { return queue_.size(); }
  std::uint64_t late_drop_count = 0;
  std::uint64_t conflict_count = 0;

 private:
  std::map<std::int64_t, std::uint64_t> queue_;
};

}  // namespace slotsim
