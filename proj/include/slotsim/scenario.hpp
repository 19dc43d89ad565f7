#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slotsim/channel.hpp"
#include "slotsim/jit.hpp"
#include "slotsim/phy.hpp"
#include "slotsim/time.hpp"

namespace slotsim {

enum class NodeRole { Ap, Device };

struct DetectionConfig {
  double miss_probability = 0.0;
  double jitter_samples = 0.0;
};

struct NodeConfig {
  NodeId id = 0;
  NodeRole role = NodeRole::Device;
  double drift_ppm = 0.0;      // radio oscillator, relative to true time
  Duration radio_offset_ns = 0;
  double host_drift_ppm = 0.0;
  Duration host_offset_ns = 0;
  LinkDelayModel link_tx;  // host -> radio
  LinkDelayModel link_rx;  // radio -> host
  std::optional<DetectionConfig> detection;  // overrides scenario default
  std::optional<JitConfig> jit;              // overrides scenario default
  std::vector<std::int64_t> forced_beacon_miss_frames;
};

enum class TrafficMode { Uplink, Rtt };

struct EventSyncConfig {
  bool enabled = false;
  std::int64_t global_time_ns = 0;  // AP radio axis
  std::int64_t arm_time_ns = 0;     // schedule at the first offset estimate after this
};

struct MetricsConfig {
  std::uint64_t raw_sample_cap = 10ULL * 1000 * 1000;
  std::uint64_t rtt_csv_cap = 1000ULL * 1000;
  std::int64_t warmup_frames = 0;  // alignment/rtt samples before this frame are not recorded
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  PhyConfig phy;
  std::vector<NodeConfig> nodes;
  PropagationModel propagation;
  std::map<std::int32_t, NodeId> schedule;  // data slot -> owner
  DetectionConfig detection;                // default for nodes without override
  JitConfig jit;                            // default for nodes without override
  TrafficMode traffic = TrafficMode::Uplink;
  bool compensation = true;
  bool resync_on_beacon = true;  // false: hold the first anchor (drift experiment)
  std::int64_t horizon_frames = 0;     // one of horizon_frames / horizon_ns
  std::int64_t horizon_ns = 0;
  Duration first_beacon_ns = 30 * kNsPerMs;
  EventSyncConfig event_sync;
  MetricsConfig metrics;

  const NodeConfig& ap() const;
  DetectionConfig detection_for(const NodeConfig& n) const {
    return n.detection ? *n.detection : detection;
  }
  JitConfig jit_for(const NodeConfig& n) const { return n.jit ? *n.jit : jit; }
};

struct LoadResult {
  Scenario scenario;
  std::vector<std::string> warnings;
};

// Parse + validate. Unknown keys are always errors; with strict, warnings
// (suspicious but legal settings) are promoted to errors too. All problems
// are reported at once.
LoadResult load_scenario_text(const std::string& json_text, bool strict = false);
LoadResult load_scenario_file(const std::string& path, bool strict = false);

// Normalized form: every field materialized, keys sorted. Loading the dump
// yields a scenario identical to the original.
std::string dump_scenario(const Scenario& s);

// Apply one swept key (t_adv, beta, drift_ppm, guard_samples, jitter_samples)
// to a copy of the scenario. Value strings for t_adv accept ns/us/ms/s
// suffixes. Throws ConfigError for unknown keys or bad values.
Scenario apply_sweep_value(const Scenario& base, const std::string& key,
                           const std::string& value);

Duration parse_duration(const std::string& text);  // "2ms", "300ns", "1.5s", bare = ns

// Bundled scenarios.
std::vector<std::string> preset_names();
const std::string& preset_text(const std::string& name);
Scenario load_preset(const std::string& name);

}  // namespace slotsim
