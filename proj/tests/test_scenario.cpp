#include <doctest.h>

#include <string>

#include "slotsim/error.hpp"
#include "slotsim/rng.hpp"
#include "slotsim/scenario.hpp"

using namespace slotsim;

namespace {

const char* kMinimal = R"json({
  "name": "mini",
  "nodes": [
    {"id": 0, "role": "ap"},
    {"id": 1, "role": "device", "drift_ppm": -0.6}
  ],
  "propagation": {"default_ns": 0},
  "schedule": {"5": 1},
  "jit": {"t_adv_override_ns": 2000000},
  "horizon": {"frames": 10}
})json";

std::string patched(const std::string& needle, const std::string& replacement) {
  std::string text = kMinimal;
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), replacement);
  return text;
}

}  // namespace

TEST_CASE("minimal scenario loads with defaults") {
  const LoadResult r = load_scenario_text(kMinimal);
  CHECK(r.warnings.empty());
  const Scenario& s = r.scenario;
  CHECK(s.name == "mini");
  CHECK(s.seed == 1);
  CHECK(s.phy.slots_per_frame == 19);
  CHECK(s.nodes.size() == 2);
  CHECK(s.ap().id == 0);
  CHECK(s.nodes[1].drift_ppm == doctest::Approx(-0.6));
  CHECK(s.schedule.at(5) == 1);
  CHECK(s.horizon_frames == 10);
  CHECK(s.first_beacon_ns == 30'000'000);
  CHECK(s.jit_for(s.nodes[1]).t_adv_override_ns == 2'000'000);
}

TEST_CASE("unknown keys are all reported at once") {
  const std::string text = patched("\"name\": \"mini\"",
                                   "\"name\": \"mini\", \"bogus\": 1, \"extra\": 2");
  try {
    load_scenario_text(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("bogus") != std::string::npos);
    CHECK(what.find("extra") != std::string::npos);
  }
}

TEST_CASE("role and clock validation") {
  // two APs
  CHECK_THROWS_AS(load_scenario_text(patched("\"role\": \"device\", \"drift_ppm\": -0.6",
                                             "\"role\": \"ap\"")),
                  ConfigError);
  // no AP
  CHECK_THROWS_AS(load_scenario_text(patched("\"id\": 0, \"role\": \"ap\"",
                                             "\"id\": 0, \"role\": \"device\"")),
                  ConfigError);
  // AP with a drifting radio
  CHECK_THROWS_AS(load_scenario_text(patched("\"id\": 0, \"role\": \"ap\"",
                                             "\"id\": 0, \"role\": \"ap\", \"drift_ppm\": 1.0")),
                  ConfigError);
  // duplicate ids
  CHECK_THROWS_AS(load_scenario_text(patched("\"id\": 1,", "\"id\": 0,")), ConfigError);
}

TEST_CASE("phy, schedule, and horizon validation") {
  CHECK_THROWS_AS(load_scenario_text(patched("\"nodes\"",
                                             "\"phy\": {\"bandwidth_hz\": 3000000}, \"nodes\"")),
                  ConfigError);
  // slot 0 belongs to the beacon
  CHECK_THROWS_AS(load_scenario_text(patched("\"schedule\": {\"5\": 1}",
                                             "\"schedule\": {\"0\": 1}")),
                  ConfigError);
  // beyond the frame
  CHECK_THROWS_AS(load_scenario_text(patched("\"schedule\": {\"5\": 1}",
                                             "\"schedule\": {\"19\": 1}")),
                  ConfigError);
  // unknown owner
  CHECK_THROWS_AS(load_scenario_text(patched("\"schedule\": {\"5\": 1}",
                                             "\"schedule\": {\"5\": 9}")),
                  ConfigError);
  // both horizons
  CHECK_THROWS_AS(load_scenario_text(patched("\"horizon\": {\"frames\": 10}",
                                             "\"horizon\": {\"frames\": 10, \"seconds\": 1}")),
                  ConfigError);
  // neither horizon
  CHECK_THROWS_AS(load_scenario_text(patched("\"horizon\": {\"frames\": 10}",
                                             "\"horizon\": {}")),
                  ConfigError);
  // first beacon off the sample grid
  CHECK_THROWS_AS(load_scenario_text(patched("\"horizon\": {\"frames\": 10}",
                                             "\"horizon\": {\"frames\": 10}, "
                                             "\"first_beacon_ns\": 30000001")),
                  ConfigError);
}

TEST_CASE("advance-time configuration must be resolvable") {
  CHECK_THROWS_AS(load_scenario_text(patched("\"jit\": {\"t_adv_override_ns\": 2000000}",
                                             "\"jit\": {\"t_adv_override_ns\": 0}")),
                  ConfigError);
  // probes make it resolvable again
  const auto ok = load_scenario_text(
      patched("\"jit\": {\"t_adv_override_ns\": 2000000}",
              "\"jit\": {\"t_adv_override_ns\": 0, \"n_probes\": 100}"));
  CHECK(ok.scenario.jit.n_probes == 100);
}

TEST_CASE("propagation must cover every AP-device pair") {
  CHECK_THROWS_AS(load_scenario_text(patched("\"propagation\": {\"default_ns\": 0}",
                                             "\"propagation\": {}")),
                  ConfigError);
  const auto ok = load_scenario_text(
      patched("\"propagation\": {\"default_ns\": 0}",
              "\"propagation\": {\"pairs\": [{\"a\": 0, \"b\": 1, \"delay_ns\": 300}]}"));
  CHECK(propagation_delay(ok.scenario.propagation, 1, 0) == 300);
}

TEST_CASE("warnings stay warnings unless strict") {
  // a cap below the mean clamps most draws: legal but suspicious
  const std::string text = patched(
      "\"drift_ppm\": -0.6",
      "\"drift_ppm\": -0.6, \"link_delay\": {\"distribution\": \"truncated_normal\", "
      "\"mean_ns\": 577000, \"deviation_ns\": 300000, \"floor_ns\": 100000, "
      "\"cap_ns\": 200000}");
  const LoadResult relaxed = load_scenario_text(text, false);
  CHECK(relaxed.warnings.size() == 1);
  CHECK_THROWS_AS(load_scenario_text(text, true), ConfigError);
}

TEST_CASE("normalized dump round-trips") {
  for (const std::string& name : preset_names()) {
    const Scenario s = load_preset(name);
    const std::string dumped = dump_scenario(s);
    const LoadResult again = load_scenario_text(dumped);
    CHECK(again.warnings.empty());
    CHECK(dump_scenario(again.scenario) == dumped);
  }
}

TEST_CASE("all presets load cleanly") {
  const auto names = preset_names();
  CHECK(names.size() == 11);
  for (const std::string& name : names) {
    const Scenario s = load_preset(name);
    CHECK(s.name == name);
  }
  CHECK_THROWS_AS(load_preset("no_such_preset"), ConfigError);
  CHECK_THROWS_AS(preset_text("no_such_preset"), ConfigError);
}

TEST_CASE("durations parse with unit suffixes") {
  CHECK(parse_duration("2ms") == 2'000'000);
  CHECK(parse_duration("300ns") == 300);
  CHECK(parse_duration("250us") == 250'000);
  CHECK(parse_duration("1.5s") == 1'500'000'000);
  CHECK(parse_duration("42") == 42);
  CHECK(parse_duration("0.5us") == 500);
  CHECK_THROWS_AS(parse_duration("2 ms"), ConfigError);
  CHECK_THROWS_AS(parse_duration("fast"), ConfigError);
  CHECK_THROWS_AS(parse_duration(""), ConfigError);
}

TEST_CASE("sweep application") {
  const Scenario base = load_preset("rtt_longslot");
  const Scenario t10 = apply_sweep_value(base, "t_adv", "10ms");
  CHECK(t10.jit.t_adv_override_ns == 10'000'000);

  const Scenario b2 = apply_sweep_value(base, "beta", "2.0");
  CHECK(b2.jit.beta == doctest::Approx(2.0));

  const Scenario d = apply_sweep_value(base, "drift_ppm", "0.3");
  for (const NodeConfig& n : d.nodes) {
    if (n.role == NodeRole::Device) CHECK(n.drift_ppm == doctest::Approx(0.3));
    if (n.role == NodeRole::Ap) CHECK(n.drift_ppm == doctest::Approx(0.0));
  }

  const Scenario g = apply_sweep_value(base, "guard_samples", "400");
  CHECK(g.phy.guard_samples == 400);

  const Scenario j = apply_sweep_value(base, "jitter_samples", "0.5");
  CHECK(j.detection.jitter_samples == doctest::Approx(0.5));

  CHECK_THROWS_AS(apply_sweep_value(base, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(apply_sweep_value(base, "t_adv", "-2ms"), ConfigError);
  CHECK_THROWS_AS(apply_sweep_value(base, "beta", "abc"), ConfigError);
}

TEST_CASE("sweep seeds are stable and value-sensitive") {
  const auto s1 = derive_seed(1, fnv1a64("t_adv"), fnv1a64("2ms"));
  const auto s2 = derive_seed(1, fnv1a64("t_adv"), fnv1a64("2ms"));
  const auto s3 = derive_seed(1, fnv1a64("t_adv"), fnv1a64("10ms"));
  CHECK(s1 == s2);
  CHECK(s1 != s3);
}
