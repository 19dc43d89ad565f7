#include <doctest.h>

#include <random>

#include "slotsim/error.hpp"
#include "slotsim/phy.hpp"
#include "slotsim/protocol.hpp"
#include "slotsim/wire.hpp"

using namespace slotsim;

namespace {

PhyConfig short_phy() {
  PhyConfig p;
  p.payload_symbols = 12;
  p.preamble_symbols = 4;
  p.guard_samples = 80;
  return p;
}

SyncState anchored_state(std::int64_t frame, std::int64_t arrival, std::int64_t beacon_tx) {
  SyncState s;
  BeaconPayload b;
  b.frame_index = frame;
  b.tx_radio_time = beacon_tx;
  REQUIRE(device_on_beacon(s, b, arrival));
  return s;
}

}  // namespace

TEST_CASE("air interface dimensions: frozen values") {
  const PhyConfig phy;
  CHECK(sample_period_ns(phy) == 100);
  CHECK(airtime_samples(phy) == (128 + 4) * 80);
  CHECK(slot_samples(phy) == 10'920);
  CHECK(slot_duration(phy) == 1'092'000);
  CHECK(frame_duration(phy) == 19 * 1'092'000);
  CHECK(frame_duration(phy) == 20'748'000);

  const PhyConfig sp = short_phy();
  CHECK(airtime_samples(sp) == 1280);
  CHECK(slot_samples(sp) == 1360);
  CHECK(slot_duration(sp) == 136'000);

  PhyConfig bad;
  bad.bandwidth_hz = 3'000'000;  // does not divide 1e9
  CHECK_THROWS_AS(sample_period_ns(bad), ConfigError);
}

TEST_CASE("beacon departure times stride by one frame") {
  const PhyConfig phy;
  CHECK(beacon_tx_time(phy, 30'000'000, 0) == 30'000'000);
  CHECK(beacon_tx_time(phy, 30'000'000, 3) == 30'000'000 + 3 * 20'748'000);
  CHECK(beacon_tx_time(phy, 120'000'000, 400) == 120'000'000 + 400LL * 20'748'000);
}

TEST_CASE("beacon acceptance: anchors advance, stale beacons are rejected") {
  SyncState s;
  CHECK_FALSE(s.anchored);
  BeaconPayload b;
  b.frame_index = 5;
  b.tx_radio_time = 1'000'000;
  CHECK(device_on_beacon(s, b, 2'000'000));
  CHECK(s.anchored);
  CHECK(s.anchor_frame == 5);
  CHECK(s.anchor_arrival == 2'000'000);
  CHECK(s.anchor_beacon_tx == 1'000'000);

  // same frame again: stale
  CHECK_FALSE(device_on_beacon(s, b, 2'000'100));
  CHECK(s.stale_beacons == 1);
  CHECK(s.anchor_arrival == 2'000'000);

  b.frame_index = 6;
  b.tx_radio_time = 1'000'000 + 20'748'000;
  CHECK(device_on_beacon(s, b, 2'000'000 + 20'748'000));
  CHECK(s.anchor_frame == 6);
}

TEST_CASE("slot boundary extrapolation: frozen examples") {
  const PhyConfig phy;
  SyncState s = anchored_state(2, 100'000'000, 50'000'000);
  s.d_est = 300;

  // same frame, five slots in, transmitting 2*d early
  CHECK(compute_slot_boundary(s, phy, SlotAddress{2, 5}, true) == 105'459'400);
  // next frame's beacon slot
  CHECK(compute_slot_boundary(s, phy, SlotAddress{3, 0}, true) == 120'747'400);
  // two frames and seven slots ahead
  CHECK(compute_slot_boundary(s, phy, SlotAddress{4, 7}, true) == 149'139'400);
  // compensation off ignores d_est
  CHECK(compute_slot_boundary(s, phy, SlotAddress{2, 5}, false) == 105'460'000);
  // no estimate yet: nothing to compensate with
  s.d_est.reset();
  CHECK(compute_slot_boundary(s, phy, SlotAddress{2, 5}, true) == 105'460'000);

  CHECK_THROWS_AS(compute_slot_boundary(s, phy, SlotAddress{2, 19}, true), Error);
  CHECK_THROWS_AS(compute_slot_boundary(s, phy, SlotAddress{2, -1}, true), Error);
  SyncState unanchored;
  CHECK_THROWS_AS(compute_slot_boundary(unanchored, phy, SlotAddress{2, 5}, true), Error);
}

TEST_CASE("handshake: symmetric paths recover offset and delay exactly") {
  // device 5 us ahead of the AP, 300 ns propagation each way
  const std::int64_t s00k = 1'000'000;
  const std::int64_t t1 = 1'005'300;    // s00k + d + o
  const std::int64_t sijl = 2'000'000;
  const std::int64_t t02 = 1'995'300;   // sijl + d - o
  const PtpResult r = ptp_update(t1, s00k, sijl, t02);
  CHECK(r.d_raw == 300);
  CHECK(r.d_est == 300);
  CHECK(r.o_est == 5000);
}

TEST_CASE("handshake: asymmetry biases the offset by half the difference") {
  // forward path 400 ns, return path 300 ns, true offset +5 us
  const std::int64_t s00k = 1'000'000;
  const std::int64_t t1 = s00k + 400 + 5000;
  const std::int64_t sijl = 2'000'000;
  const std::int64_t t02 = sijl + 300 - 5000;
  const PtpResult r = ptp_update(t1, s00k, sijl, t02);
  CHECK(r.d_est == 350);
  CHECK(r.o_est == 5050);
}

TEST_CASE("handshake: negative raw delay is clamped, sign kept for diagnostics") {
  const PtpResult r = ptp_update(/*t1=*/900, /*s00k=*/1000, /*sijl=*/1000, /*t02=*/800);
  CHECK(r.d_raw == -150);
  CHECK(r.d_est == 0);
  CHECK(r.o_est == 50);
}

TEST_CASE("handshake: integer offsets and delays are recovered exactly") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::int64_t> offs(-5'000'000, 5'000'000);
  std::uniform_int_distribution<std::int64_t> delays(0, 400'000);
  std::uniform_int_distribution<std::int64_t> bases(0, 1'000'000'000'000LL);
  for (int i = 0; i < 10'000; i++) {
    const std::int64_t o = offs(gen);
    const std::int64_t d = delays(gen);
    const std::int64_t s00k = bases(gen);
    const std::int64_t sijl = s00k + bases(gen) % 50'000'000;
    const std::int64_t t1 = s00k + d + o;
    const std::int64_t t02 = sijl + d - o;
    const PtpResult r = ptp_update(t1, s00k, sijl, t02);
    REQUIRE(r.d_est == d);
    REQUIRE(r.o_est == o);
  }
}

TEST_CASE("echo matching: the plausibility window picks the right transmission") {
  const PhyConfig phy;
  SyncState s = anchored_state(10, 300'000'000, 200'000'000);
  // two outstanding uplinks one slot apart
  s.pending.push_back(PendingUplink{SlotAddress{10, 5}, 500'000'000});
  s.pending.push_back(PendingUplink{SlotAddress{10, 6}, 501'092'000});

  // beacon leg: t1 - s00k = 100'000'000 exactly, so down = 1e8; choose t02 so
  // the older entry gives d = 300: up = t02 - s_ij5 = 300*2 - down
  const std::int64_t t02 = 500'000'000 + 600 - 100'000'000;
  const auto r = consume_echo(s, t02, phy);
  REQUIRE(r.has_value());
  CHECK(r->d_est == 300);
  CHECK(s.pending.size() == 1);  // the newer one stays
  CHECK(s.pending.front().at.slot == 6);
  CHECK(s.ptp_rounds == 1);

  // a bogus echo far outside every candidate's window matches nothing
  const auto none = consume_echo(s, t02 + 2'500'000, phy);
  CHECK_FALSE(none.has_value());
  CHECK(s.unmatched_echoes == 1);
  CHECK(s.pending.size() == 1);
}

TEST_CASE("echo matching: window boundary is inclusive at a quarter slot") {
  const PhyConfig phy;
  SyncState s = anchored_state(1, 100, 0);
  s.pending.push_back(PendingUplink{SlotAddress{1, 1}, 10'000});
  // down = t1 - s00k = 100; pick t02 so d_raw = slot/4 exactly
  const std::int64_t window = slot_duration(phy) / 4;
  const std::int64_t t02 = 10'000 + 2 * window - 100;
  const auto r = consume_echo(s, t02, phy);
  REQUIRE(r.has_value());
  CHECK(r->d_raw == window);
}

TEST_CASE("global-time conversions invert each other") {
  CHECK(estimate_ap_time(1'000'000, 5000) == 995'000);
  CHECK(schedule_synchronized_event(500'000'000, 5000) == 500'005'000);
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::int64_t> vals(-1'000'000'000, 1'000'000'000);
  for (int i = 0; i < 1000; i++) {
    const std::int64_t t = vals(gen);
    const std::int64_t o = vals(gen) / 1000;
    CHECK(estimate_ap_time(schedule_synchronized_event(t, o), o) == t);
  }
}

TEST_CASE("drift metric counts whole samples of early arrival") {
  const PhyConfig phy;
  const std::int64_t first = 1000;
  const std::int64_t frame = frame_duration(phy);
  CHECK(drift_metric(first, 8, first + 8 * frame, phy) == 0);
  CHECK(drift_metric(first, 8, first + 8 * frame - 100, phy) == 1);
  CHECK(drift_metric(first, 8, first + 8 * frame - 49, phy) == 0);
  CHECK(drift_metric(first, 8, first + 8 * frame - 5000, phy) == 50);
  CHECK(drift_metric(first, 8, first + 8 * frame + 100, phy) == -1);
}

TEST_CASE("wire: beacon round-trip") {
  BeaconPayload b;
  b.frame_index = 42;
  b.tx_radio_time = 30'000'000 + 42LL * 20'748'000;
  b.feedback = {{1, 123'456'789}, {2, 987'654'321}};
  b.directives = {{5, 1}, {6, 2}};
  const auto bytes = serialize_beacon(b);
  const BeaconPayload back = parse_beacon(bytes);
  CHECK(back.frame_index == b.frame_index);
  CHECK(back.tx_radio_time == b.tx_radio_time);
  REQUIRE(back.feedback.size() == 2);
  CHECK(back.feedback[1].device == 2);
  CHECK(back.feedback[1].t02 == 987'654'321);
  REQUIRE(back.directives.size() == 2);
  CHECK(back.directives[0].slot == 5);
  CHECK(back.directives[0].owner == 1);

  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(parse_beacon(truncated), Error);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(parse_beacon(trailing), Error);
}

TEST_CASE("wire: data packet round-trip") {
  DataPacketPayload p;
  p.sender = 7;
  p.tx_radio_time = 123'456'789;
  p.host_tx_time = 111'222'333;
  p.app = {0xde, 0xad, 0xbe, 0xef};
  const auto bytes = serialize_data_packet(p);
  const DataPacketPayload back = parse_data_packet(bytes);
  CHECK(back.sender == 7);
  CHECK(back.tx_radio_time == 123'456'789);
  CHECK(back.host_tx_time == 111'222'333);
  CHECK(back.app == p.app);
}
