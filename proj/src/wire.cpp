#include "slotsim/wire.hpp"

#include "slotsim/error.hpp"

namespace slotsim {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; i++) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
  const auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; i++) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

struct Reader {
  const std::vector<std::uint8_t>& buf;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size()) throw Error("truncated payload");
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(buf[pos + i]) << (8 * i);
    pos += 8;
    return static_cast<std::int64_t>(v);
  }
  void done() const {
    if (pos != buf.size()) throw Error("trailing bytes in payload");
  }
};

}  // namespace

std::vector<std::uint8_t> serialize_beacon(const BeaconPayload& b) {
  std::vector<std::uint8_t> out;
  put_i64(out, b.frame_index);
  put_i64(out, b.tx_radio_time);
  put_u32(out, static_cast<std::uint32_t>(b.feedback.size()));
  for (const auto& f : b.feedback) {
    put_u32(out, f.device);
    put_i64(out, f.t02);
  }
  put_u32(out, static_cast<std::uint32_t>(b.directives.size()));
  for (const auto& d : b.directives) {
    put_u16(out, d.slot);
    put_u32(out, d.owner);
  }
  return out;
}

BeaconPayload parse_beacon(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  BeaconPayload b;
  b.frame_index = r.i64();
  b.tx_radio_time = r.i64();
  const std::uint32_t nf = r.u32();
  b.feedback.reserve(nf);
  for (std::uint32_t i = 0; i < nf; i++) {
    FeedbackEntry f;
    f.device = r.u32();
    f.t02 = r.i64();
    b.feedback.push_back(f);
  }
  const std::uint32_t nd = r.u32();
  b.directives.reserve(nd);
  for (std::uint32_t i = 0; i < nd; i++) {
    ScheduleDirective d;
    d.slot = r.u16();
    d.owner = r.u32();
    b.directives.push_back(d);
  }
  r.done();
  return b;
}

std::vector<std::uint8_t> serialize_data_packet(const DataPacketPayload& p) {
  std::vector<std::uint8_t> out;
  put_u32(out, p.sender);
  put_i64(out, p.tx_radio_time);
  put_i64(out, p.host_tx_time);
  put_u32(out, static_cast<std::uint32_t>(p.app.size()));
  out.insert(out.end(), p.app.begin(), p.app.end());
  return out;
}

DataPacketPayload parse_data_packet(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  DataPacketPayload p;
  p.sender = r.u32();
  p.tx_radio_time = r.i64();
  p.host_tx_time = r.i64();
  const std::uint32_t n = r.u32();
  r.need(n);
  p.app.assign(bytes.begin() + r.pos, bytes.begin() + r.pos + n);
  r.pos += n;
  r.done();
  return p;
}

}  // namespace slotsim
