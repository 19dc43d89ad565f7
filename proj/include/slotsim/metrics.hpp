#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slotsim/error.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

// Nearest-rank percentile: the ceil(p/100 * n)-th smallest sample, p in
// (0, 100]. No interpolation, so the result is always an observed value.
template <typename T>
T percentile(std::vector<T> samples, double p) {
  if (samples.empty()) throw Error("percentile of empty sample set");
  if (!(p > 0.0) || p > 100.0) throw Error("percentile p must be in (0, 100]");
  std::sort(samples.begin(), samples.end());
  const double exact = p * static_cast<double>(samples.size()) / 100.0;
  auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  if (rank < 1) rank = 1;
  if (rank > samples.size()) rank = samples.size();
  return samples[rank - 1];
}

// Raw samples up to a cap; past it, a fixed-width histogram sketch takes over
// (percentiles then come from bin upper edges, so they are conservative by at
// most one bin width). Everything stays integer and deterministic.
class SampleStore {
 public:
  explicit SampleStore(std::uint64_t cap = 10ULL * 1000 * 1000, Duration bin_width_ns = 1000)
      : cap_(cap), bin_width_(bin_width_ns) {}

  void add(std::int64_t v);
  std::uint64_t count() const { return count_; }
  bool sketched() const { return sketched_; }
  std::int64_t max() const { return max_; }
  std::int64_t min() const { return min_; }
  std::int64_t percentile_value(double p) const;
  const std::vector<std::int64_t>& raw() const { return samples_; }

 private:
  std::uint64_t cap_;
  Duration bin_width_;
  bool sketched_ = false;
  std::uint64_t count_ = 0;
  std::int64_t max_ = 0, min_ = 0;
  std::vector<std::int64_t> samples_;
  std::map<std::int64_t, std::uint64_t> bins_;  // floor(v / bin_width) -> count
};

struct NodeCounters {
  // transmit side
  std::uint64_t submitted = 0;
  std::uint64_t late_drops = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t skipped_slots = 0;
  std::uint64_t freshness_violations = 0;
  Duration max_freshness_ns = 0;
  // receive side
  std::uint64_t delivered = 0;
  std::uint64_t missed_detections = 0;
  std::uint64_t missed_beacons = 0;
  std::uint64_t overlaps = 0;
  // sync
  std::uint64_t stale_beacons = 0;
  std::uint64_t negative_d = 0;
  std::uint64_t unmatched_echoes = 0;
  std::uint64_t ptp_rounds = 0;
  std::int64_t first_anchor_frame = -1;
};

struct RttRow {
  std::uint64_t index = 0;
  NodeId node = 0;
  std::int64_t t_ptx_host_ns = 0;
  std::int64_t t_prx_host_ns = 0;
  std::int64_t rtt_ns = 0;
};

struct MetricsReport {
  std::string scenario_name;
  std::uint64_t seed = 0;
  NodeId ap_node = 0;
  std::int64_t frames = 0;
  std::int64_t horizon_end_true_ns = 0;

  std::map<NodeId, NodeCounters> node;

  // |observed - expected| of data packets at the AP, whole samples, per sender
  std::map<NodeId, std::map<std::int64_t, std::uint64_t>> alignment;

  // per device: (frame, signed drift in samples) of every detected beacon
  std::map<NodeId, std::vector<std::pair<std::int64_t, std::int64_t>>> drift_trace;

  SampleStore rtt{};
  std::vector<RttRow> rtt_rows;  // capped
  std::uint64_t rtt_rows_dropped = 0;

  std::map<NodeId, std::int64_t> event_fire_true_ns;

  // resolved advance time per node (override or probe-derived)
  std::map<NodeId, Duration> t_adv_ns;

  // global conservation
  std::uint64_t expected_deliveries = 0;
  std::uint64_t in_flight_submissions = 0;
  std::uint64_t in_flight_deliveries = 0;

  std::uint64_t alignment_device_total() const;
  std::uint64_t alignment_device_bin(std::int64_t bin) const;
  std::uint64_t alignment_device_within(std::int64_t max_abs_bin) const;
};

void record_alignment(MetricsReport& report, NodeId sender, std::int64_t delta_samples);

}  // namespace slotsim
