#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slotsim/engine.hpp"
#include "slotsim/error.hpp"
#include "slotsim/output.hpp"
#include "slotsim/rng.hpp"
#include "slotsim/scenario.hpp"

namespace {

struct SweepSpec {
  std::string key;
  std::vector<std::string> values;
};

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw slotsim::ConfigError("--sweep expects KEY=V1,V2,... got: " + text);
  }
  SweepSpec spec;
  spec.key = text.substr(0, eq);
  std::stringstream rest(text.substr(eq + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (!item.empty()) spec.values.push_back(item);
  }
  if (spec.values.empty()) throw slotsim::ConfigError("--sweep has no values: " + text);
  return spec;
}

slotsim::MetricsReport run_one(const slotsim::Scenario& sc, const std::string& dir,
                               bool dump_trace) {
  std::ostringstream trace;
  slotsim::Engine engine(sc, dump_trace ? &trace : nullptr);
  slotsim::MetricsReport report = engine.run();
  if (dump_trace) {
    const std::string text = trace.str();
    slotsim::write_run_outputs(report, sc, dir, &text);
  } else {
    slotsim::write_run_outputs(report, sc, dir);
  }
  return report;
}

std::uint64_t pooled_bin0(const slotsim::MetricsReport& r) { return r.alignment_device_bin(0); }

std::uint64_t total_late_drops(const slotsim::MetricsReport& r) {
  std::uint64_t total = 0;
  for (const auto& [id, c] : r.node) total += c.late_drops;
  return total;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slotsim: deterministic simulator of a time-slotted SDR network"};

  std::string scenario_path;
  std::string preset;
  std::string out_dir = "out";
  std::string sweep_text;
  std::uint64_t seed = 0;
  bool have_list = false;
  bool dump_trace = false;
  bool strict = false;

  app.add_option("--scenario", scenario_path, "scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "bundled scenario name (see --list-presets)");
  app.add_flag("--list-presets", have_list, "print bundled scenario names and exit");
  auto* seed_opt = app.add_option("--seed", seed, "override the scenario seed");
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--sweep", sweep_text,
                 "KEY=V1,V2,... run once per value (keys: t_adv, beta, drift_ppm, "
                 "guard_samples, jitter_samples)");
  app.add_flag("--dump-trace", dump_trace, "write the full event trace (trace.txt)");
  app.add_flag("--strict", strict, "treat scenario warnings as errors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (have_list) {
      for (const std::string& name : slotsim::preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (scenario_path.empty() == preset.empty()) {
      std::cerr << "error: exactly one of --scenario / --preset is required\n";
      return 2;
    }

    slotsim::LoadResult loaded =
        scenario_path.empty()
            ? slotsim::load_scenario_text(slotsim::preset_text(preset), strict)
            : slotsim::load_scenario_file(scenario_path, strict);
    for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    slotsim::Scenario base = std::move(loaded.scenario);
    if (seed_opt->count() > 0) base.seed = seed;

    if (sweep_text.empty()) {
      const slotsim::MetricsReport report = run_one(base, out_dir, dump_trace);
      std::cout << slotsim::summary_text(report);
      std::cout << "wrote " << out_dir << "\n";
      return 0;
    }

    const SweepSpec spec = parse_sweep(sweep_text);
    std::ostringstream csv;
    csv << "value,seed,rtt_count,rtt_p50_ns,rtt_p99_ns,rtt_max_ns,alignment_total,"
           "alignment_bin0,late_drops_total\n";
    for (const std::string& value : spec.values) {
      slotsim::Scenario sc = slotsim::apply_sweep_value(base, spec.key, value);
      sc.seed = slotsim::derive_seed(base.seed, slotsim::fnv1a64(spec.key),
                                     slotsim::fnv1a64(value));
      sc.name = base.name + "_" + spec.key + "_" + value;
      const std::string dir =
          (std::filesystem::path(out_dir) / (spec.key + "_" + value)).string();
      const slotsim::MetricsReport report = run_one(sc, dir, dump_trace);
      csv << value << ',' << report.seed << ',' << report.rtt.count() << ',';
      if (report.rtt.count() > 0) {
        csv << report.rtt.percentile_value(50.0) << ',' << report.rtt.percentile_value(99.0)
            << ',' << report.rtt.max() << ',';
      } else {
        csv << "0,0,0,";
      }
      csv << report.alignment_device_total() << ',' << pooled_bin0(report) << ','
          << total_late_drops(report) << '\n';
      std::cout << spec.key << '=' << value << " done (" << dir << ")\n";
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path sweep_csv =
        std::filesystem::path(out_dir) / ("sweep_" + spec.key + ".csv");
    {
      std::ofstream out(sweep_csv);
      out << csv.str();
    }
    std::cout << "wrote " << sweep_csv.string() << "\n";
    return 0;
  } catch (const slotsim::ConfigError& e) {
    std::cerr << "configuration error:\n" << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
