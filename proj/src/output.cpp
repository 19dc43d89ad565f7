#include "slotsim/output.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "slotsim/error.hpp"

namespace slotsim {

using nlohmann::json;

namespace {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::map<std::int64_t, std::uint64_t> pooled_alignment(const MetricsReport& r) {
  std::map<std::int64_t, std::uint64_t> pooled;
  for (const auto& [sender, hist] : r.alignment) {
    for (const auto& [bin, count] : hist) pooled[bin] += count;
  }
  return pooled;
}

json counters_to_json(const NodeCounters& c) {
  return json{{"submitted", c.submitted},
              {"late_drops", c.late_drops},
              {"conflicts", c.conflicts},
              {"transmitted", c.transmitted},
              {"skipped_slots", c.skipped_slots},
              {"freshness_violations", c.freshness_violations},
              {"max_freshness_ns", c.max_freshness_ns},
              {"delivered", c.delivered},
              {"missed_detections", c.missed_detections},
              {"missed_beacons", c.missed_beacons},
              {"overlaps", c.overlaps},
              {"stale_beacons", c.stale_beacons},
              {"negative_d", c.negative_d},
              {"unmatched_echoes", c.unmatched_echoes},
              {"ptp_rounds", c.ptp_rounds},
              {"first_anchor_frame", c.first_anchor_frame}};
}

}  // namespace

std::string summary_text(const MetricsReport& r) {
  std::map<std::string, std::int64_t> kv;
  kv["seed"] = static_cast<std::int64_t>(r.seed);
  kv["ap_node"] = r.ap_node;
  kv["frames"] = r.frames;
  kv["horizon_end_ns"] = r.horizon_end_true_ns;
  kv["expected_deliveries"] = static_cast<std::int64_t>(r.expected_deliveries);
  kv["in_flight_submissions"] = static_cast<std::int64_t>(r.in_flight_submissions);
  kv["in_flight_deliveries"] = static_cast<std::int64_t>(r.in_flight_deliveries);

  for (const auto& [id, c] : r.node) {
    const std::string p = "node" + std::to_string(id) + "_";
    kv[p + "submitted"] = static_cast<std::int64_t>(c.submitted);
    kv[p + "late_drops"] = static_cast<std::int64_t>(c.late_drops);
    kv[p + "conflicts"] = static_cast<std::int64_t>(c.conflicts);
    kv[p + "transmitted"] = static_cast<std::int64_t>(c.transmitted);
    kv[p + "skipped_slots"] = static_cast<std::int64_t>(c.skipped_slots);
    kv[p + "freshness_violations"] = static_cast<std::int64_t>(c.freshness_violations);
    kv[p + "max_freshness_ns"] = c.max_freshness_ns;
    kv[p + "delivered"] = static_cast<std::int64_t>(c.delivered);
    kv[p + "missed_detections"] = static_cast<std::int64_t>(c.missed_detections);
    kv[p + "missed_beacons"] = static_cast<std::int64_t>(c.missed_beacons);
    kv[p + "overlaps"] = static_cast<std::int64_t>(c.overlaps);
    kv[p + "stale_beacons"] = static_cast<std::int64_t>(c.stale_beacons);
    kv[p + "negative_d"] = static_cast<std::int64_t>(c.negative_d);
    kv[p + "unmatched_echoes"] = static_cast<std::int64_t>(c.unmatched_echoes);
    kv[p + "ptp_rounds"] = static_cast<std::int64_t>(c.ptp_rounds);
    kv[p + "first_anchor_frame"] = c.first_anchor_frame;
  }
  for (const auto& [id, t] : r.t_adv_ns) kv["node" + std::to_string(id) + "_t_adv_ns"] = t;
  for (const auto& [id, t] : r.event_fire_true_ns) {
    kv["node" + std::to_string(id) + "_event_fire_ns"] = t;
  }

  const auto pooled = pooled_alignment(r);
  std::uint64_t total = 0;
  for (const auto& [bin, count] : pooled) total += count;
  kv["alignment_total"] = static_cast<std::int64_t>(total);
  if (!pooled.empty()) {
    kv["alignment_min_bin"] = pooled.begin()->first;
    kv["alignment_max_bin"] = pooled.rbegin()->first;
    const auto it = pooled.find(0);
    kv["alignment_bin0"] = it == pooled.end() ? 0 : static_cast<std::int64_t>(it->second);
    kv["alignment_within1"] = static_cast<std::int64_t>(r.alignment_device_within(1));
  }

  if (r.rtt.count() > 0) {
    kv["rtt_count"] = static_cast<std::int64_t>(r.rtt.count());
    kv["rtt_min_ns"] = r.rtt.min();
    kv["rtt_max_ns"] = r.rtt.max();
    kv["rtt_p50_ns"] = r.rtt.percentile_value(50.0);
    kv["rtt_p90_ns"] = r.rtt.percentile_value(90.0);
    kv["rtt_p99_ns"] = r.rtt.percentile_value(99.0);
    kv["rtt_rows_dropped"] = static_cast<std::int64_t>(r.rtt_rows_dropped);
  }

  if (!r.drift_trace.empty() && !r.drift_trace.begin()->second.empty()) {
    const auto& trace = r.drift_trace.begin()->second;
    kv["drift_node"] = r.drift_trace.begin()->first;
    kv["drift_points"] = static_cast<std::int64_t>(trace.size());
    kv["drift_last_frame"] = trace.back().first;
    kv["drift_last_delta"] = trace.back().second;
  }

  std::ostringstream out;
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  return out.str();
}

std::string report_json_text(const MetricsReport& r) {
  json root;
  root["scenario_name"] = r.scenario_name;
  root["seed"] = r.seed;
  root["ap_node"] = r.ap_node;
  root["frames"] = r.frames;
  root["horizon_end_true_ns"] = r.horizon_end_true_ns;
  root["expected_deliveries"] = r.expected_deliveries;
  root["in_flight_submissions"] = r.in_flight_submissions;
  root["in_flight_deliveries"] = r.in_flight_deliveries;

  json nodes;
  for (const auto& [id, c] : r.node) nodes[std::to_string(id)] = counters_to_json(c);
  root["nodes"] = nodes;

  json alignment;
  for (const auto& [sender, hist] : r.alignment) {
    json bins;
    for (const auto& [bin, count] : hist) bins[std::to_string(bin)] = count;
    alignment[std::to_string(sender)] = bins;
  }
  root["alignment"] = alignment;

  json drift;
  for (const auto& [id, trace] : r.drift_trace) {
    json rows = json::array();
    for (const auto& [frame, delta] : trace) rows.push_back(json::array({frame, delta}));
    drift[std::to_string(id)] = rows;
  }
  root["drift_trace"] = drift;

  json rtt;
  rtt["count"] = r.rtt.count();
  rtt["sketched"] = r.rtt.sketched();
  if (r.rtt.count() > 0) {
    rtt["min_ns"] = r.rtt.min();
    rtt["max_ns"] = r.rtt.max();
    rtt["p50_ns"] = r.rtt.percentile_value(50.0);
    rtt["p90_ns"] = r.rtt.percentile_value(90.0);
    rtt["p99_ns"] = r.rtt.percentile_value(99.0);
  }
  root["rtt"] = rtt;

  json tadv;
  for (const auto& [id, t] : r.t_adv_ns) tadv[std::to_string(id)] = t;
  root["t_adv_ns"] = tadv;

  json fires;
  for (const auto& [id, t] : r.event_fire_true_ns) fires[std::to_string(id)] = t;
  root["event_fire_true_ns"] = fires;

  return root.dump(2) + "\n";
}

void write_run_outputs(const MetricsReport& report, const Scenario& scenario,
                       const std::string& dir, const std::string* trace_text) {
  const std::filesystem::path base(dir);
  std::filesystem::create_directories(base);

  write_file_atomic(base / "summary", summary_text(report));
  write_file_atomic(base / "report.json", report_json_text(report));
  write_file_atomic(base / "scenario.json", dump_scenario(scenario));

  {
    std::ostringstream csv;
    csv << "bin,count\n";
    for (const auto& [bin, count] : pooled_alignment(report)) {
      csv << bin << ',' << count << '\n';
    }
    write_file_atomic(base / "alignment_hist.csv", csv.str());
  }

  if (!report.drift_trace.empty()) {
    std::ostringstream csv;
    csv << "frame,delta_samples\n";
    for (const auto& [frame, delta] : report.drift_trace.begin()->second) {
      csv << frame << ',' << delta << '\n';
    }
    write_file_atomic(base / "drift_trace.csv", csv.str());
  }

  if (!report.rtt_rows.empty()) {
    std::ostringstream csv;
    csv << "index,node,t_ptx_host_ns,t_prx_host_ns,rtt_ns\n";
    for (const RttRow& row : report.rtt_rows) {
      csv << row.index << ',' << row.node << ',' << row.t_ptx_host_ns << ','
          << row.t_prx_host_ns << ',' << row.rtt_ns << '\n';
    }
    write_file_atomic(base / "rtt_samples.csv", csv.str());
  }

  if (trace_text != nullptr) write_file_atomic(base / "trace.txt", *trace_text);
}

}  // namespace slotsim
