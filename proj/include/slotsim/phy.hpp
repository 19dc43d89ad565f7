#pragma once

#include <cstdint>

#include "slotsim/time.hpp"

namespace slotsim {

// OFDM air-interface dimensions. A slot is the airtime of one packet
// (preamble + payload OFDM symbols, each fft_len + cp_len samples) plus a
// guard interval; slot 0 of every frame carries the beacon.
struct PhyConfig {
  std::int64_t bandwidth_hz = 10 * 1000 * 1000;
  std::int32_t payload_symbols = 128;
  std::int32_t preamble_symbols = 4;
  std::int32_t fft_len = 64;
  std::int32_t cp_len = 16;
  std::int32_t guard_samples = 360;
  std::int32_t slots_per_frame = 19;
};

// Sample period in nanoseconds; bandwidth must divide 1e9 exactly.
Duration sample_period_ns(const PhyConfig& phy);

// Samples actually occupied on air by one packet (no guard).
std::int64_t airtime_samples(const PhyConfig& phy);

// Samples per slot including guard.
std::int64_t slot_samples(const PhyConfig& phy);

Duration slot_duration(const PhyConfig& phy);
Duration frame_duration(const PhyConfig& phy);

}  // namespace slotsim
