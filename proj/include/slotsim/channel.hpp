#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "slotsim/clock.hpp"
#include "slotsim/rng.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

enum class DelayDistribution { ShiftedLognormal, TruncatedNormal, Constant };

// One direction of a node's host<->radio link (Ethernet + driver + kernel).
// mean/deviation describe this single direction; the round trip over two
// independent draws then has mean 2*mean and deviation sqrt(2)*deviation.
struct LinkDelayModel {
  DelayDistribution distribution = DelayDistribution::ShiftedLognormal;
  Duration mean_ns = 577 * 1000;
  Duration deviation_ns = 574171;
  Duration floor_ns = 50 * 1000;
  Duration cap_ns = 0;  // 0 = unbounded; otherwise draws are clamped to [floor, cap]

  bool operator==(const LinkDelayModel&) const = default;
};

// One delay draw in integer nanoseconds, always >= floor (and <= cap if set).
Duration draw_link_delay(const LinkDelayModel& model, RngStream& rng);

// Static pairwise antenna-to-antenna delays. Symmetric; a node to itself is 0.
struct PropagationModel {
  std::map<std::pair<NodeId, NodeId>, Duration> delays;  // key is (min id, max id)
  Duration default_ns = -1;                              // -1 = unlisted pairs are an error

  void set_pair(NodeId a, NodeId b, Duration d);
};

Duration propagation_delay(const PropagationModel& model, NodeId a, NodeId b);

// Receiver-side packet detection: a miss probability and a gaussian arrival
// jitter expressed in sample units.
struct DetectionModel {
  double miss_probability = 0.0;
  double jitter_samples = 0.0;
};

struct DetectionOutcome {
  bool missed = false;
  std::int64_t sample_index = 0;
  TimeInstant measured_arrival;  // on the receiver's sample grid
};

// radio_arrival is the physical arrival instant on the receiving radio's
// axis, before quantization. Draw order: miss first, then jitter.
DetectionOutcome detect_arrival(const DetectionModel& model, TimeInstant radio_arrival,
                                const SampleCounter& counter, RngStream& miss_rng,
                                RngStream& jitter_rng);

}  // namespace slotsim
