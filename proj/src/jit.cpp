#include "slotsim/jit.hpp"

#include <cmath>

#include "slotsim/error.hpp"

namespace slotsim {

RttEstimate probe_rtt(const LinkDelayModel& tx, const LinkDelayModel& rx, std::int64_t n_probes,
                      RngStream& tx_rng, RngStream& rx_rng) {
  if (n_probes <= 0) throw Error("probe_rtt requires n_probes > 0");
  RttEstimate est;
  est.n = n_probes;
  double sum = 0, sum2 = 0;
  for (std::int64_t i = 0; i < n_probes; i++) {
    const double rtt =
        static_cast<double>(draw_link_delay(tx, tx_rng) + draw_link_delay(rx, rx_rng));
    sum += rtt;
    sum2 += rtt * rtt;
  }
  const double n = static_cast<double>(n_probes);
  const double mean = sum / n;
  est.mean_ns = static_cast<Duration>(std::llround(mean));
  if (n_probes > 1) {
    const double var = (sum2 - n * mean * mean) / (n - 1.0);
    est.deviation_ns = static_cast<Duration>(std::llround(std::sqrt(var > 0 ? var : 0)));
  }
  return est;
}

Duration compute_t_adv(const RttEstimate& est, const JitConfig& cfg) {
  if (cfg.t_adv_override_ns > 0) return cfg.t_adv_override_ns;
  const double t = static_cast<double>(est.mean_ns) +
                   cfg.beta * static_cast<double>(est.deviation_ns) +
                   static_cast<double>(cfg.prep_allowance_ns);
  return static_cast<Duration>(std::llround(t));
}

RadioTxQueue::Enqueue RadioTxQueue::enqueue(std::int64_t tx_radio_time, std::uint64_t packet_ref,
                                            std::int64_t now_radio_time, Duration min_lead_ns) {
  if (tx_radio_time < now_radio_time + min_lead_ns) {
    late_drop_count++;
    return Enqueue::Late;
  }
  const auto [it, inserted] = queue_.emplace(tx_radio_time, packet_ref);
  (void)it;
  if (!inserted) {
    conflict_count++;
    return Enqueue::Conflict;
  }
  return Enqueue::Accepted;
}

std::optional<std::uint64_t> RadioTxQueue::pop(std::int64_t tx_radio_time) {
  const auto it = queue_.find(tx_radio_time);
  if (it == queue_.end()) return std::nullopt;
  const std::uint64_t ref = it->second;
  queue_.erase(it);
  return ref;
}

}  // namespace slotsim
