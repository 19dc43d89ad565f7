#include <map>
#include <string>

#include "slotsim/error.hpp"
#include "slotsim/scenario.hpp"

namespace slotsim {

namespace {

// Lab-bench drift measurement: one device with a -0.6 ppm radio, no data
// slots, re-anchoring disabled so every beacon is measured against the first
// anchor. The AP host link is constant so no beacon ever misses its slot and
// the per-frame trace has no gaps.
const char* kDriftTrace = R"json({
  "name": "drift_trace",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 1, "role": "device", "drift_ppm": -0.6,
     "link_delay": {"distribution": "constant", "mean_ns": 577000}}
  ],
  "propagation": {"default_ns": 0},
  "schedule": {},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.0},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": false},
  "horizon": {"frames": 410},
  "first_beacon_ns": 120000000
})json";

// Two devices at different ranges transmitting every frame, with delay
// compensation on. Host link draws keep the default profile but are capped
// below the advance budget, so no uplink misses its slot and every beacon
// carries the previous round's echo. Arrival error at the AP then
// concentrates in the zero-sample bin with single-sample tails.
const char* kAlignment = R"json({
  "name": "alignment",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap", "link_delay": {"cap_ns": 1900000}},
    {"id": 1, "role": "device", "drift_ppm": -0.2, "link_delay": {"cap_ns": 1900000}},
    {"id": 2, "role": "device", "drift_ppm": 0.16, "link_delay": {"cap_ns": 1900000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 10610},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Same setup with compensation off: each device's arrivals shift by twice its
// propagation delay (6 samples at 90 m, 2 samples at 30 m).
const char* kAlignmentNocomp = R"json({
  "name": "alignment_nocomp",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap", "link_delay": {"cap_ns": 1900000}},
    {"id": 1, "role": "device", "drift_ppm": -0.2, "link_delay": {"cap_ns": 1900000}},
    {"id": 2, "role": "device", "drift_ppm": 0.16, "link_delay": {"cap_ns": 1900000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": false, "resync_on_beacon": true},
  "horizon": {"frames": 10610},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Noise-free variant of the uncompensated run: zero drift, zero detection
// jitter, constant host links. Every arrival lands exactly 2*propagation
// late, so the histograms are a single spike at 6 and 2 samples.
const char* kAlignmentNocompClean = R"json({
  "name": "alignment_nocomp_clean",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 1, "role": "device",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 2, "role": "device",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.0},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": false, "resync_on_beacon": true},
  "horizon": {"frames": 2010},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Obstructed-path texture: longer excess propagation, a noisier detector,
// and occasional missed detections.
const char* kAlignmentNlos = R"json({
  "name": "alignment_nlos",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap"},
    {"id": 1, "role": "device", "drift_ppm": -0.2},
    {"id": 2, "role": "device", "drift_ppm": 0.16}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 900},
    {"a": 0, "b": 2, "delay_ns": 400}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.02, "jitter_samples": 0.35},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 10610},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Round-robin ping/echo over the full 19-slot frame: device 1 owns slots
// 1,4,..,16, device 2 owns 2,5,..,17, the AP answers from 3,6,..,18. Sweep
// t_adv to reproduce the round-trip percentiles versus advance time.
const char* kRttLongslot = R"json({
  "name": "rtt_longslot",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap"},
    {"id": 1, "role": "device", "drift_ppm": -0.2},
    {"id": 2, "role": "device", "drift_ppm": 0.16}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {
    "1": 1, "2": 2, "3": 0, "4": 1, "5": 2, "6": 0,
    "7": 1, "8": 2, "9": 0, "10": 1, "11": 2, "12": 0,
    "13": 1, "14": 2, "15": 0, "16": 1, "17": 2, "18": 0
  },
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "rtt",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 1250},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Short-slot variant with bounded host links (truncated normal, hard cap):
// with every delay bounded the worst-case round trip is bounded too.
const char* kRttShortslot = R"json({
  "name": "rtt_shortslot",
  "seed": 1,
  "phy": {"payload_symbols": 12, "preamble_symbols": 4, "guard_samples": 80},
  "nodes": [
    {"id": 0, "role": "ap",
     "link_delay": {"distribution": "truncated_normal", "mean_ns": 577000,
                    "deviation_ns": 300000, "floor_ns": 100000, "cap_ns": 1300000}},
    {"id": 1, "role": "device", "drift_ppm": -0.2,
     "link_delay": {"distribution": "truncated_normal", "mean_ns": 577000,
                    "deviation_ns": 300000, "floor_ns": 100000, "cap_ns": 1300000}},
    {"id": 2, "role": "device", "drift_ppm": 0.16,
     "link_delay": {"distribution": "truncated_normal", "mean_ns": 577000,
                    "deviation_ns": 300000, "floor_ns": 100000, "cap_ns": 1300000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {
    "1": 1, "2": 2, "3": 0, "4": 1, "5": 2, "6": 0,
    "7": 1, "8": 2, "9": 0, "10": 1, "11": 2, "12": 0,
    "13": 1, "14": 2, "15": 0, "16": 1, "17": 2, "18": 0
  },
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "rtt",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 8600},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// Distributed event firing with ideal clocks apart from large fixed radio
// offsets: after one handshake every node fires within quantization of the
// shared target instant.
const char* kEventSyncClean = R"json({
  "name": "event_sync_clean",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 1, "role": "device", "radio_offset_ns": 5000000,
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 2, "role": "device", "radio_offset_ns": -3000000,
     "link_delay": {"distribution": "constant", "mean_ns": 577000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.0},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"ns": 600000000},
  "first_beacon_ns": 30000000,
  "event_sync": {"enabled": true, "global_time_ns": 500000000, "arm_time_ns": 400000000},
  "metrics": {"warmup_frames": 5}
})json";

// Same firing target under drift, detection jitter, and lognormal host
// links: the fire spread widens to the offset-estimate error, still well
// under a microsecond.
const char* kEventSyncJittered = R"json({
  "name": "event_sync_jittered",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap"},
    {"id": 1, "role": "device", "drift_ppm": -0.2, "radio_offset_ns": 5000000},
    {"id": 2, "role": "device", "drift_ppm": 0.16, "radio_offset_ns": -3000000}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"ns": 600000000},
  "first_beacon_ns": 30000000,
  "event_sync": {"enabled": true, "global_time_ns": 500000000, "arm_time_ns": 400000000},
  "metrics": {"warmup_frames": 5}
})json";

// Device 1 is forced to miss five consecutive beacons mid-run and must keep
// transmitting on extrapolated boundaries until it re-anchors.
const char* kBeaconMiss = R"json({
  "name": "beacon_miss",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 1, "role": "device", "drift_ppm": -0.6,
     "forced_beacon_miss_frames": [30, 31, 32, 33, 34],
     "link_delay": {"distribution": "constant", "mean_ns": 577000}},
    {"id": 2, "role": "device",
     "link_delay": {"distribution": "constant", "mean_ns": 577000}}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {"5": 1, "6": 2},
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.0},
  "jit": {"t_adv_override_ns": 2000000},
  "traffic": "uplink",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 60},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

// No fixed advance: every host measures its own submission round trips at
// startup and derives the advance from the mean plus beta deviations.
const char* kAdaptiveAdvance = R"json({
  "name": "adaptive_advance",
  "seed": 1,
  "nodes": [
    {"id": 0, "role": "ap"},
    {"id": 1, "role": "device", "drift_ppm": -0.2},
    {"id": 2, "role": "device", "drift_ppm": 0.16}
  ],
  "propagation": {"pairs": [
    {"a": 0, "b": 1, "delay_ns": 300},
    {"a": 0, "b": 2, "delay_ns": 100}
  ]},
  "schedule": {
    "1": 1, "2": 2, "3": 0, "4": 1, "5": 2, "6": 0,
    "7": 1, "8": 2, "9": 0, "10": 1, "11": 2, "12": 0,
    "13": 1, "14": 2, "15": 0, "16": 1, "17": 2, "18": 0
  },
  "detection": {"miss_probability": 0.0, "jitter_samples": 0.08},
  "jit": {"beta": 1.0, "t_adv_override_ns": 0, "n_probes": 10000, "probe_interval_ns": 1000000},
  "traffic": "rtt",
  "toggles": {"compensation": true, "resync_on_beacon": true},
  "horizon": {"frames": 300},
  "first_beacon_ns": 30000000,
  "metrics": {"warmup_frames": 5}
})json";

const std::map<std::string, std::string>& preset_table() {
  static const std::map<std::string, std::string> table = {
      {"drift_trace", kDriftTrace},
      {"alignment", kAlignment},
      {"alignment_nocomp", kAlignmentNocomp},
      {"alignment_nocomp_clean", kAlignmentNocompClean},
      {"alignment_nlos", kAlignmentNlos},
      {"rtt_longslot", kRttLongslot},
      {"rtt_shortslot", kRttShortslot},
      {"event_sync_clean", kEventSyncClean},
      {"event_sync_jittered", kEventSyncJittered},
      {"beacon_miss", kBeaconMiss},
      {"adaptive_advance", kAdaptiveAdvance},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : preset_table()) names.push_back(name);
  return names;
}

const std::string& preset_text(const std::string& name) {
  const auto& table = preset_table();
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [n, t] : table) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset: " + name + " (known: " + known + ")");
  }
  return it->second;
}

Scenario load_preset(const std::string& name) {
  LoadResult r = load_scenario_text(preset_text(name), false);
  return std::move(r.scenario);
}

}  // namespace slotsim
