#pragma once

#include <string>

#include "slotsim/metrics.hpp"
#include "slotsim/scenario.hpp"

namespace slotsim {

// Flat key=value digest of one run; every value is an integer so the file
// diffs and greps cleanly.
std::string summary_text(const MetricsReport& report);

// Full structured report as JSON.
std::string report_json_text(const MetricsReport& report);

// Write the result set for one run into dir (created if needed):
//   summary            key=value digest
//   report.json        full metrics
//   scenario.json      normalized scenario echo
//   alignment_hist.csv bin,count (all device senders pooled)
//   drift_trace.csv    frame,delta_samples (lowest-id device)
//   rtt_samples.csv    index,node,t_ptx_host_ns,t_prx_host_ns,rtt_ns
//   trace.txt          event trace, only when one was captured
// Files are written whole via a temp name and renamed into place.
void write_run_outputs(const MetricsReport& report, const Scenario& scenario,
                       const std::string& dir, const std::string* trace_text = nullptr);

}  // namespace slotsim
