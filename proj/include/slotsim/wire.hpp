#pragma once

#include <cstdint>
#include <vector>

#include "slotsim/protocol.hpp"

namespace slotsim {

// Canonical byte form of the over-the-air payloads: fields in declaration
// order, little-endian fixed-width integers, list lengths as u32 prefixes.
// Dumped traces can be replayed byte-exactly from these.

std::vector<std::uint8_t> serialize_beacon(const BeaconPayload& b);
BeaconPayload parse_beacon(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> serialize_data_packet(const DataPacketPayload& p);
DataPacketPayload parse_data_packet(const std::vector<std::uint8_t>& bytes);

}  // namespace slotsim
