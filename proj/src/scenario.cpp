#include "slotsim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "slotsim/error.hpp"
#include "slotsim/protocol.hpp"

namespace slotsim {

using nlohmann::json;

namespace {

struct Ctx {
  std::vector<std::string> errs;
  std::vector<std::string> warns;

  void err(const std::string& path, const std::string& msg) { errs.push_back(path + ": " + msg); }
  void warn(const std::string& path, const std::string& msg) {
    warns.push_back(path + ": " + msg);
  }
};

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys,
                Ctx& ctx) {
  if (!obj.is_object()) {
    ctx.err(path, "expected an object");
    return;
  }
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) ctx.err(path + "." + it.key(), "unknown key");
  }
}

bool get_i64(const json& obj, const char* key, const std::string& path, Ctx& ctx,
             std::int64_t& out) {
  if (!obj.contains(key)) return false;
  const json& v = obj.at(key);
  if (v.is_number_integer()) {
    out = v.get<std::int64_t>();
    return true;
  }
  ctx.err(path + "." + key, "expected an integer");
  return false;
}

bool get_f64(const json& obj, const char* key, const std::string& path, Ctx& ctx, double& out) {
  if (!obj.contains(key)) return false;
  const json& v = obj.at(key);
  if (v.is_number()) {
    out = v.get<double>();
    return true;
  }
  ctx.err(path + "." + key, "expected a number");
  return false;
}

bool get_bool(const json& obj, const char* key, const std::string& path, Ctx& ctx, bool& out) {
  if (!obj.contains(key)) return false;
  const json& v = obj.at(key);
  if (v.is_boolean()) {
    out = v.get<bool>();
    return true;
  }
  ctx.err(path + "." + key, "expected a boolean");
  return false;
}

bool get_str(const json& obj, const char* key, const std::string& path, Ctx& ctx,
             std::string& out) {
  if (!obj.contains(key)) return false;
  const json& v = obj.at(key);
  if (v.is_string()) {
    out = v.get<std::string>();
    return true;
  }
  ctx.err(path + "." + key, "expected a string");
  return false;
}

LinkDelayModel parse_link_one(const json& obj, const std::string& path, Ctx& ctx,
                              const LinkDelayModel& base) {
  LinkDelayModel m = base;
  check_keys(obj, path, {"distribution", "mean_ns", "deviation_ns", "floor_ns", "cap_ns"}, ctx);
  std::string dist;
  if (get_str(obj, "distribution", path, ctx, dist)) {
    if (dist == "shifted_lognormal") {
      m.distribution = DelayDistribution::ShiftedLognormal;
    } else if (dist == "truncated_normal") {
      m.distribution = DelayDistribution::TruncatedNormal;
    } else if (dist == "constant") {
      m.distribution = DelayDistribution::Constant;
    } else {
      ctx.err(path + ".distribution",
              "must be one of shifted_lognormal, truncated_normal, constant");
    }
  }
  get_i64(obj, "mean_ns", path, ctx, m.mean_ns);
  get_i64(obj, "deviation_ns", path, ctx, m.deviation_ns);
  get_i64(obj, "floor_ns", path, ctx, m.floor_ns);
  get_i64(obj, "cap_ns", path, ctx, m.cap_ns);
  return m;
}

void parse_link(const json& obj, const std::string& path, Ctx& ctx, NodeConfig& node) {
  if (obj.contains("tx") || obj.contains("rx")) {
    check_keys(obj, path, {"tx", "rx"}, ctx);
    if (obj.contains("tx")) node.link_tx = parse_link_one(obj.at("tx"), path + ".tx", ctx, node.link_tx);
    if (obj.contains("rx")) node.link_rx = parse_link_one(obj.at("rx"), path + ".rx", ctx, node.link_rx);
  } else {
    node.link_tx = parse_link_one(obj, path, ctx, node.link_tx);
    node.link_rx = node.link_tx;
  }
}

DetectionConfig parse_detection(const json& obj, const std::string& path, Ctx& ctx,
                                const DetectionConfig& base) {
  DetectionConfig d = base;
  check_keys(obj, path, {"miss_probability", "jitter_samples"}, ctx);
  get_f64(obj, "miss_probability", path, ctx, d.miss_probability);
  get_f64(obj, "jitter_samples", path, ctx, d.jitter_samples);
  return d;
}

JitConfig parse_jit(const json& obj, const std::string& path, Ctx& ctx, const JitConfig& base) {
  JitConfig j = base;
  check_keys(obj, path,
             {"beta", "prep_allowance_ns", "t_adv_override_ns", "n_probes", "probe_interval_ns"},
             ctx);
  get_f64(obj, "beta", path, ctx, j.beta);
  get_i64(obj, "prep_allowance_ns", path, ctx, j.prep_allowance_ns);
  get_i64(obj, "t_adv_override_ns", path, ctx, j.t_adv_override_ns);
  get_i64(obj, "n_probes", path, ctx, j.n_probes);
  get_i64(obj, "probe_interval_ns", path, ctx, j.probe_interval_ns);
  return j;
}

NodeConfig parse_node(const json& obj, const std::string& path, Ctx& ctx,
                      const Scenario& defaults) {
  NodeConfig n;
  n.link_tx = LinkDelayModel{};
  n.link_rx = LinkDelayModel{};
  check_keys(obj, path,
             {"id", "role", "drift_ppm", "radio_offset_ns", "host_drift_ppm", "host_offset_ns",
              "link_delay", "detection", "jit", "forced_beacon_miss_frames"},
             ctx);
  std::int64_t id = -1;
  if (!get_i64(obj, "id", path, ctx, id)) ctx.err(path, "missing required key id");
  if (id < 0 || id > 0xffffffffLL) {
    ctx.err(path + ".id", "must be a non-negative 32-bit integer");
    id = 0;
  }
  n.id = static_cast<NodeId>(id);
  std::string role;
  if (!get_str(obj, "role", path, ctx, role)) ctx.err(path, "missing required key role");
  if (role == "ap") {
    n.role = NodeRole::Ap;
  } else if (role == "device" || role.empty()) {
    n.role = NodeRole::Device;
  } else {
    ctx.err(path + ".role", "must be \"ap\" or \"device\"");
  }
  get_f64(obj, "drift_ppm", path, ctx, n.drift_ppm);
  get_i64(obj, "radio_offset_ns", path, ctx, n.radio_offset_ns);
  get_f64(obj, "host_drift_ppm", path, ctx, n.host_drift_ppm);
  get_i64(obj, "host_offset_ns", path, ctx, n.host_offset_ns);
  if (obj.contains("link_delay")) parse_link(obj.at("link_delay"), path + ".link_delay", ctx, n);
  if (obj.contains("detection")) {
    n.detection = parse_detection(obj.at("detection"), path + ".detection", ctx, defaults.detection);
  }
  if (obj.contains("jit")) n.jit = parse_jit(obj.at("jit"), path + ".jit", ctx, defaults.jit);
  if (obj.contains("forced_beacon_miss_frames")) {
    const json& arr = obj.at("forced_beacon_miss_frames");
    if (!arr.is_array()) {
      ctx.err(path + ".forced_beacon_miss_frames", "expected an array of frame indices");
    } else {
      for (const auto& v : arr) {
        if (v.is_number_integer()) {
          n.forced_beacon_miss_frames.push_back(v.get<std::int64_t>());
        } else {
          ctx.err(path + ".forced_beacon_miss_frames", "expected integer frame indices");
        }
      }
    }
  }
  return n;
}

void validate(Scenario& s, Ctx& ctx) {
  // phy
  if (s.phy.bandwidth_hz <= 0 || kNsPerSec % s.phy.bandwidth_hz != 0) {
    ctx.err("phy.bandwidth_hz", "must be positive and divide 1e9 exactly");
    return;  // sample period underpins everything else
  }
  if (s.phy.payload_symbols <= 0) ctx.err("phy.payload_symbols", "must be positive");
  if (s.phy.preamble_symbols < 0) ctx.err("phy.preamble_symbols", "must be non-negative");
  if (s.phy.fft_len <= 0) ctx.err("phy.fft_len", "must be positive");
  if (s.phy.cp_len < 0) ctx.err("phy.cp_len", "must be non-negative");
  if (s.phy.guard_samples < 0) ctx.err("phy.guard_samples", "must be non-negative");
  if (s.phy.slots_per_frame < 1) ctx.err("phy.slots_per_frame", "must be at least 1");

  const Duration period = kNsPerSec / s.phy.bandwidth_hz;

  // nodes
  std::set<NodeId> ids;
  int ap_count = 0;
  for (std::size_t i = 0; i < s.nodes.size(); i++) {
    const NodeConfig& n = s.nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    if (!ids.insert(n.id).second) ctx.err(path + ".id", "duplicate node id");
    if (n.role == NodeRole::Ap) {
      ap_count++;
      if (n.drift_ppm != 0 || n.radio_offset_ns != 0) {
        ctx.err(path, "the AP radio clock is the reference: drift_ppm and radio_offset_ns must be 0");
      }
    }
    if (std::abs(n.drift_ppm) >= 1000.0) ctx.err(path + ".drift_ppm", "magnitude must be < 1000");
    if (std::abs(n.host_drift_ppm) >= 1000.0) {
      ctx.err(path + ".host_drift_ppm", "magnitude must be < 1000");
    }
    // a shared link_delay block fills both directions; flag it once
    const bool symmetric = n.link_tx == n.link_rx;
    for (const LinkDelayModel* m : {&n.link_tx, &n.link_rx}) {
      if (symmetric && m == &n.link_rx) break;
      const char* which =
          symmetric ? ".link_delay" : (m == &n.link_tx) ? ".link_delay.tx" : ".link_delay.rx";
      if (m->mean_ns <= 0) ctx.err(path + which, "mean_ns must be positive");
      if (m->deviation_ns < 0) ctx.err(path + which, "deviation_ns must be non-negative");
      if (m->floor_ns < 0) ctx.err(path + which, "floor_ns must be non-negative");
      if (m->floor_ns > m->mean_ns) ctx.err(path + which, "floor_ns must not exceed mean_ns");
      if (m->cap_ns != 0 && m->cap_ns < m->mean_ns) {
        ctx.warn(path + which, "cap_ns below mean_ns clamps most draws");
      }
    }
    const DetectionConfig det = s.detection_for(n);
    if (det.miss_probability < 0 || det.miss_probability >= 1) {
      ctx.err(path + ".detection.miss_probability", "must be in [0, 1)");
    }
    if (det.jitter_samples < 0) ctx.err(path + ".detection.jitter_samples", "must be non-negative");
    if (det.jitter_samples > 1.0) {
      ctx.warn(path + ".detection.jitter_samples", "jitter above one sample defeats detection");
    }
    const JitConfig jc = s.jit_for(n);
    if (jc.beta < 0) ctx.err(path + ".jit.beta", "must be non-negative");
    if (jc.prep_allowance_ns < 0) ctx.err(path + ".jit.prep_allowance_ns", "must be non-negative");
    if (jc.t_adv_override_ns < 0) ctx.err(path + ".jit.t_adv_override_ns", "must be non-negative");
    if (jc.t_adv_override_ns == 0 && jc.n_probes <= 0) {
      ctx.err(path + ".jit", "either t_adv_override_ns or a positive n_probes is required");
    }
    if (jc.t_adv_override_ns > 0 && n.role == NodeRole::Ap &&
        jc.t_adv_override_ns >= s.first_beacon_ns) {
      ctx.err(path + ".jit.t_adv_override_ns",
              "the AP's first wake (first_beacon_ns - t_adv) must land after t = 0");
    }
    if (jc.t_adv_override_ns > 2 * frame_duration(s.phy)) {
      ctx.warn(path + ".jit.t_adv_override_ns", "t_adv beyond two frames starves the schedule");
    }
  }
  if (ap_count != 1) ctx.err("nodes", "exactly one node must have role \"ap\"");

  // schedule
  for (const auto& [slot, owner] : s.schedule) {
    const std::string path = "schedule[" + std::to_string(slot) + "]";
    if (slot < 1 || slot >= s.phy.slots_per_frame) {
      ctx.err(path, "data slots range from 1 to slots_per_frame-1 (slot 0 is the beacon)");
    }
    if (!ids.count(owner)) ctx.err(path, "owner " + std::to_string(owner) + " is not a node");
  }

  // propagation: every AP<->device pair must resolve
  if (ap_count == 1) {
    const NodeConfig& ap = s.ap();
    for (const NodeConfig& n : s.nodes) {
      if (n.id == ap.id) continue;
      try {
        const Duration d = propagation_delay(s.propagation, ap.id, n.id);
        if (d < 0) ctx.err("propagation", "delay must be non-negative");
      } catch (const ConfigError&) {
        ctx.err("propagation",
                "no delay for AP<->node " + std::to_string(n.id) + " and no default_ns");
      }
    }
  }

  // horizon
  if ((s.horizon_frames > 0) == (s.horizon_ns > 0)) {
    ctx.err("horizon", "exactly one of frames / seconds must be positive");
  }

  if (s.first_beacon_ns <= 0) {
    ctx.err("first_beacon_ns", "must be positive");
  } else if (s.first_beacon_ns % period != 0) {
    ctx.err("first_beacon_ns", "must be a multiple of the sample period (" +
                                   std::to_string(period) + " ns)");
  }

  if (s.event_sync.enabled) {
    if (s.event_sync.global_time_ns <= s.event_sync.arm_time_ns) {
      ctx.err("event_sync", "global_time_ns must come after arm_time_ns");
    }
    if (s.event_sync.arm_time_ns < 0) ctx.err("event_sync.arm_time_ns", "must be non-negative");
  }
  if (s.metrics.warmup_frames < 0) ctx.err("metrics.warmup_frames", "must be non-negative");
}

Scenario parse_scenario(const json& root, Ctx& ctx) {
  Scenario s;
  check_keys(root, "$",
             {"name", "seed", "phy", "nodes", "propagation", "schedule", "detection", "jit",
              "traffic", "toggles", "horizon", "first_beacon_ns", "event_sync", "metrics"},
             ctx);
  if (!ctx.errs.empty() && !root.is_object()) return s;

  get_str(root, "name", "$", ctx, s.name);
  std::int64_t seed = 1;
  if (get_i64(root, "seed", "$", ctx, seed)) s.seed = static_cast<std::uint64_t>(seed);

  if (root.contains("phy")) {
    const json& p = root.at("phy");
    check_keys(p, "phy",
               {"bandwidth_hz", "payload_symbols", "preamble_symbols", "fft_len", "cp_len",
                "guard_samples", "slots_per_frame"},
               ctx);
    std::int64_t v;
    if (get_i64(p, "bandwidth_hz", "phy", ctx, v)) s.phy.bandwidth_hz = v;
    if (get_i64(p, "payload_symbols", "phy", ctx, v)) s.phy.payload_symbols = static_cast<std::int32_t>(v);
    if (get_i64(p, "preamble_symbols", "phy", ctx, v)) s.phy.preamble_symbols = static_cast<std::int32_t>(v);
    if (get_i64(p, "fft_len", "phy", ctx, v)) s.phy.fft_len = static_cast<std::int32_t>(v);
    if (get_i64(p, "cp_len", "phy", ctx, v)) s.phy.cp_len = static_cast<std::int32_t>(v);
    if (get_i64(p, "guard_samples", "phy", ctx, v)) s.phy.guard_samples = static_cast<std::int32_t>(v);
    if (get_i64(p, "slots_per_frame", "phy", ctx, v)) s.phy.slots_per_frame = static_cast<std::int32_t>(v);
  }

  if (root.contains("detection")) {
    s.detection = parse_detection(root.at("detection"), "detection", ctx, DetectionConfig{});
  }
  if (root.contains("jit")) s.jit = parse_jit(root.at("jit"), "jit", ctx, JitConfig{});

  if (root.contains("nodes")) {
    const json& arr = root.at("nodes");
    if (!arr.is_array()) {
      ctx.err("nodes", "expected an array");
    } else {
      for (std::size_t i = 0; i < arr.size(); i++) {
        s.nodes.push_back(parse_node(arr[i], "nodes[" + std::to_string(i) + "]", ctx, s));
      }
    }
  } else {
    ctx.err("$", "missing required key nodes");
  }

  if (root.contains("propagation")) {
    const json& p = root.at("propagation");
    check_keys(p, "propagation", {"default_ns", "pairs"}, ctx);
    std::int64_t v;
    if (get_i64(p, "default_ns", "propagation", ctx, v)) s.propagation.default_ns = v;
    if (p.contains("pairs")) {
      const json& pairs = p.at("pairs");
      if (!pairs.is_array()) {
        ctx.err("propagation.pairs", "expected an array");
      } else {
        for (std::size_t i = 0; i < pairs.size(); i++) {
          const std::string path = "propagation.pairs[" + std::to_string(i) + "]";
          check_keys(pairs[i], path, {"a", "b", "delay_ns"}, ctx);
          std::int64_t a = -1, b = -1, d = -1;
          get_i64(pairs[i], "a", path, ctx, a);
          get_i64(pairs[i], "b", path, ctx, b);
          get_i64(pairs[i], "delay_ns", path, ctx, d);
          if (a < 0 || b < 0 || d < 0) {
            ctx.err(path, "requires non-negative a, b, delay_ns");
          } else {
            s.propagation.set_pair(static_cast<NodeId>(a), static_cast<NodeId>(b), d);
          }
        }
      }
    }
  }

  if (root.contains("schedule")) {
    const json& sch = root.at("schedule");
    if (!sch.is_object()) {
      ctx.err("schedule", "expected an object mapping slot index to owner id");
    } else {
      for (auto it = sch.begin(); it != sch.end(); ++it) {
        std::int32_t slot = -1;
        try {
          slot = std::stoi(it.key());
        } catch (...) {
          ctx.err("schedule." + it.key(), "slot keys must be integers");
          continue;
        }
        if (!it.value().is_number_integer()) {
          ctx.err("schedule." + it.key(), "owner must be a node id");
          continue;
        }
        s.schedule[slot] = static_cast<NodeId>(it.value().get<std::int64_t>());
      }
    }
  }

  std::string traffic;
  if (get_str(root, "traffic", "$", ctx, traffic)) {
    if (traffic == "uplink") {
      s.traffic = TrafficMode::Uplink;
    } else if (traffic == "rtt") {
      s.traffic = TrafficMode::Rtt;
    } else {
      ctx.err("traffic", "must be \"uplink\" or \"rtt\"");
    }
  }

  if (root.contains("toggles")) {
    const json& t = root.at("toggles");
    check_keys(t, "toggles", {"compensation", "resync_on_beacon"}, ctx);
    get_bool(t, "compensation", "toggles", ctx, s.compensation);
    get_bool(t, "resync_on_beacon", "toggles", ctx, s.resync_on_beacon);
  }

  if (root.contains("horizon")) {
    const json& h = root.at("horizon");
    check_keys(h, "horizon", {"frames", "seconds", "ns"}, ctx);
    get_i64(h, "frames", "horizon", ctx, s.horizon_frames);
    get_i64(h, "ns", "horizon", ctx, s.horizon_ns);
    double secs = 0;
    if (get_f64(h, "seconds", "horizon", ctx, secs)) {
      s.horizon_ns = static_cast<std::int64_t>(std::llround(secs * 1e9));
    }
  } else {
    ctx.err("$", "missing required key horizon");
  }

  get_i64(root, "first_beacon_ns", "$", ctx, s.first_beacon_ns);

  if (root.contains("event_sync")) {
    const json& e = root.at("event_sync");
    check_keys(e, "event_sync", {"enabled", "global_time_ns", "arm_time_ns"}, ctx);
    get_bool(e, "enabled", "event_sync", ctx, s.event_sync.enabled);
    get_i64(e, "global_time_ns", "event_sync", ctx, s.event_sync.global_time_ns);
    get_i64(e, "arm_time_ns", "event_sync", ctx, s.event_sync.arm_time_ns);
  }

  if (root.contains("metrics")) {
    const json& m = root.at("metrics");
    check_keys(m, "metrics", {"raw_sample_cap", "rtt_csv_cap", "warmup_frames"}, ctx);
    std::int64_t v;
    if (get_i64(m, "raw_sample_cap", "metrics", ctx, v)) s.metrics.raw_sample_cap = static_cast<std::uint64_t>(v);
    if (get_i64(m, "rtt_csv_cap", "metrics", ctx, v)) s.metrics.rtt_csv_cap = static_cast<std::uint64_t>(v);
    get_i64(m, "warmup_frames", "metrics", ctx, s.metrics.warmup_frames);
  }

  return s;
}

json link_to_json(const LinkDelayModel& m) {
  json j;
  switch (m.distribution) {
    case DelayDistribution::ShiftedLognormal:
      j["distribution"] = "shifted_lognormal";
      break;
    case DelayDistribution::TruncatedNormal:
      j["distribution"] = "truncated_normal";
      break;
    case DelayDistribution::Constant:
      j["distribution"] = "constant";
      break;
  }
  j["mean_ns"] = m.mean_ns;
  j["deviation_ns"] = m.deviation_ns;
  j["floor_ns"] = m.floor_ns;
  j["cap_ns"] = m.cap_ns;
  return j;
}

json detection_to_json(const DetectionConfig& d) {
  return json{{"miss_probability", d.miss_probability}, {"jitter_samples", d.jitter_samples}};
}

json jit_to_json(const JitConfig& j) {
  return json{{"beta", j.beta},
              {"prep_allowance_ns", j.prep_allowance_ns},
              {"t_adv_override_ns", j.t_adv_override_ns},
              {"n_probes", j.n_probes},
              {"probe_interval_ns", j.probe_interval_ns}};
}

}  // namespace

const NodeConfig& Scenario::ap() const {
  for (const NodeConfig& n : nodes) {
    if (n.role == NodeRole::Ap) return n;
  }
  throw ConfigError("scenario has no AP node");
}

LoadResult load_scenario_text(const std::string& json_text, bool strict) {
  Ctx ctx;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  Scenario s = parse_scenario(root, ctx);
  if (ctx.errs.empty()) validate(s, ctx);
  if (strict) {
    for (const auto& w : ctx.warns) ctx.errs.push_back(w + " (strict)");
    ctx.warns.clear();
  }
  if (!ctx.errs.empty()) throw ConfigError(ctx.errs);
  return LoadResult{std::move(s), std::move(ctx.warns)};
}

LoadResult load_scenario_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str(), strict);
}

std::string dump_scenario(const Scenario& s) {
  json root;
  root["name"] = s.name;
  root["seed"] = s.seed;
  root["phy"] = json{{"bandwidth_hz", s.phy.bandwidth_hz},
                     {"payload_symbols", s.phy.payload_symbols},
                     {"preamble_symbols", s.phy.preamble_symbols},
                     {"fft_len", s.phy.fft_len},
                     {"cp_len", s.phy.cp_len},
                     {"guard_samples", s.phy.guard_samples},
                     {"slots_per_frame", s.phy.slots_per_frame}};
  root["detection"] = detection_to_json(s.detection);
  root["jit"] = jit_to_json(s.jit);
  json nodes = json::array();
  for (const NodeConfig& n : s.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["role"] = n.role == NodeRole::Ap ? "ap" : "device";
    jn["drift_ppm"] = n.drift_ppm;
    jn["radio_offset_ns"] = n.radio_offset_ns;
    jn["host_drift_ppm"] = n.host_drift_ppm;
    jn["host_offset_ns"] = n.host_offset_ns;
    jn["link_delay"] = json{{"tx", link_to_json(n.link_tx)}, {"rx", link_to_json(n.link_rx)}};
    if (n.detection) jn["detection"] = detection_to_json(*n.detection);
    if (n.jit) jn["jit"] = jit_to_json(*n.jit);
    if (!n.forced_beacon_miss_frames.empty()) {
      jn["forced_beacon_miss_frames"] = n.forced_beacon_miss_frames;
    }
    nodes.push_back(jn);
  }
  root["nodes"] = nodes;
  json prop;
  prop["default_ns"] = s.propagation.default_ns;
  json pairs = json::array();
  for (const auto& [ab, d] : s.propagation.delays) {
    pairs.push_back(json{{"a", ab.first}, {"b", ab.second}, {"delay_ns", d}});
  }
  prop["pairs"] = pairs;
  root["propagation"] = prop;
  json sch = json::object();
  for (const auto& [slot, owner] : s.schedule) sch[std::to_string(slot)] = owner;
  root["schedule"] = sch;
  root["traffic"] = s.traffic == TrafficMode::Rtt ? "rtt" : "uplink";
  root["toggles"] = json{{"compensation", s.compensation}, {"resync_on_beacon", s.resync_on_beacon}};
  if (s.horizon_frames > 0) {
    root["horizon"] = json{{"frames", s.horizon_frames}};
  } else {
    root["horizon"] = json{{"ns", s.horizon_ns}};
  }
  root["first_beacon_ns"] = s.first_beacon_ns;
  root["event_sync"] = json{{"enabled", s.event_sync.enabled},
                            {"global_time_ns", s.event_sync.global_time_ns},
                            {"arm_time_ns", s.event_sync.arm_time_ns}};
  root["metrics"] = json{{"raw_sample_cap", s.metrics.raw_sample_cap},
                         {"rtt_csv_cap", s.metrics.rtt_csv_cap},
                         {"warmup_frames", s.metrics.warmup_frames}};
  return root.dump(2) + "\n";
}

Duration parse_duration(const std::string& text) {
  if (text.empty()) throw ConfigError("empty duration");
  std::size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(text, &pos);
  } catch (...) {
    throw ConfigError("invalid duration: " + text);
  }
  std::string suffix = text.substr(pos);
  double scale = 1;
  if (suffix == "ns" || suffix.empty()) {
    scale = 1;
  } else if (suffix == "us") {
    scale = 1e3;
  } else if (suffix == "ms") {
    scale = 1e6;
  } else if (suffix == "s") {
    scale = 1e9;
  } else {
    throw ConfigError("invalid duration suffix: " + text);
  }
  return static_cast<Duration>(std::llround(value * scale));
}

Scenario apply_sweep_value(const Scenario& base, const std::string& key,
                           const std::string& value) {
  Scenario s = base;
  auto as_double = [&]() {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw ConfigError("invalid number: " + value);
      return v;
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      throw ConfigError("invalid number: " + value);
    }
  };
  if (key == "t_adv") {
    const Duration t = parse_duration(value);
    if (t <= 0) throw ConfigError("t_adv must be positive: " + value);
    s.jit.t_adv_override_ns = t;
    for (NodeConfig& n : s.nodes) {
      if (n.jit) n.jit->t_adv_override_ns = t;
    }
  } else if (key == "beta") {
    const double b = as_double();
    s.jit.beta = b;
    for (NodeConfig& n : s.nodes) {
      if (n.jit) n.jit->beta = b;
    }
  } else if (key == "drift_ppm") {
    const double d = as_double();
    for (NodeConfig& n : s.nodes) {
      if (n.role == NodeRole::Device) n.drift_ppm = d;
    }
  } else if (key == "guard_samples") {
    const double g = as_double();
    s.phy.guard_samples = static_cast<std::int32_t>(g);
  } else if (key == "jitter_samples") {
    const double j = as_double();
    s.detection.jitter_samples = j;
    for (NodeConfig& n : s.nodes) {
      if (n.detection) n.detection->jitter_samples = j;
    }
  } else {
    throw ConfigError("unknown sweep key: " + key +
                      " (one of t_adv, beta, drift_ppm, guard_samples, jitter_samples)");
  }
  return s;
}

}  // namespace slotsim
