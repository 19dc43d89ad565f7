#include "slotsim/phy.hpp"

#include "slotsim/error.hpp"

namespace slotsim {

Duration sample_period_ns(const PhyConfig& phy) {
  if (phy.bandwidth_hz <= 0 || kNsPerSec % phy.bandwidth_hz != 0) {
    throw ConfigError("phy.bandwidth_hz must be positive and divide 1e9 ns exactly");
  }
  return kNsPerSec / phy.bandwidth_hz;
}

std::int64_t airtime_samples(const PhyConfig& phy) {
  return static_cast<std::int64_t>(phy.payload_symbols + phy.preamble_symbols) *
         (phy.fft_len + phy.cp_len);
}

std::int64_t slot_samples(const PhyConfig& phy) {
  return airtime_samples(phy) + phy.guard_samples;
}

Duration slot_duration(const PhyConfig& phy) { return slot_samples(phy) * sample_period_ns(phy); }

Duration frame_duration(const PhyConfig& phy) {
  return slot_duration(phy) * phy.slots_per_frame;
}

}  // namespace slotsim
