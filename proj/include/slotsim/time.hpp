#pragma once

#include <cstdint>
#include <string>

#include "slotsim/error.hpp"

namespace slotsim {

using NodeId = std::uint32_t;

// All durations are integer nanoseconds.
using Duration = std::int64_t;

constexpr Duration kNsPerUs = 1000;
constexpr Duration kNsPerMs = 1000 * 1000;
constexpr Duration kNsPerSec = 1000 * 1000 * 1000;

// Every timestamp lives on a named axis: the global true timeline of the
// simulation, or one node's radio (USRP) or host (PC) clock.
enum class AxisKind : std::uint8_t { GlobalTrue = 0, Radio = 1, Host = 2 };

struct Axis {
  AxisKind kind = AxisKind::GlobalTrue;
  NodeId node = 0;  // ignored for GlobalTrue

  static constexpr Axis global() { return Axis{AxisKind::GlobalTrue, 0}; }
  static constexpr Axis radio(NodeId n) { return Axis{AxisKind::Radio, n}; }
  static constexpr Axis host(NodeId n) { return Axis{AxisKind::Host, n}; }

  friend constexpr bool operator==(Axis a, Axis b) {
    if (a.kind != b.kind) return false;
    return a.kind == AxisKind::GlobalTrue || a.node == b.node;
  }
  friend constexpr bool operator!=(Axis a, Axis b) { return !(a == b); }

  std::string name() const;
};

// A point in time on one axis. Mixing axes without an explicit clock
// conversion is a bug; every binary operation checks and throws.
struct TimeInstant {
  std::int64_t ticks = 0;  // nanoseconds on `axis`
  Axis axis = Axis::global();

  static constexpr TimeInstant at(Axis a, std::int64_t t) { return TimeInstant{t, a}; }

  TimeInstant operator+(Duration d) const { return TimeInstant{ticks + d, axis}; }
  TimeInstant operator-(Duration d) const { return TimeInstant{ticks - d, axis}; }
  TimeInstant& operator+=(Duration d) {
    ticks += d;
    return *this;
  }

  Duration operator-(const TimeInstant& o) const {
    check_same(o);
    return ticks - o.ticks;
  }
  bool operator<(const TimeInstant& o) const {
    check_same(o);
    return ticks < o.ticks;
  }
  bool operator<=(const TimeInstant& o) const {
    check_same(o);
    return ticks <= o.ticks;
  }
  bool operator>(const TimeInstant& o) const { return o < *this; }
  bool operator>=(const TimeInstant& o) const { return o <= *this; }
  bool operator==(const TimeInstant& o) const {
    check_same(o);
    return ticks == o.ticks;
  }
  bool operator!=(const TimeInstant& o) const { return !(*this == o); }

 private:
  void check_same(const TimeInstant& o) const {
    if (axis != o.axis) {
      throw Error("cross-axis time arithmetic: " + axis.name() + " vs " + o.axis.name());
    }
  }
};

}  // namespace slotsim
