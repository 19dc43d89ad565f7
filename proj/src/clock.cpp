#include "slotsim/clock.hpp"

#include <limits>

namespace slotsim {

std::string Axis::name() const {
  switch (kind) {
    case AxisKind::GlobalTrue:
      return "true";
    case AxisKind::Radio:
      return "radio[" + std::to_string(node) + "]";
    case AxisKind::Host:
      return "host[" + std::to_string(node) + "]";
  }
  return "?";
}

namespace {

using i128 = __int128;

constexpr std::int64_t kPpbScale = 1000 * 1000 * 1000;

std::int64_t narrow_ticks(i128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(std::string("tick overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

// floor(a / b), b > 0, works for the full i128 range of a.
i128 floor_div_i128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// round(a / b) to nearest with ties toward +inf, b > 0.
i128 round_div_i128(i128 a, i128 b) { return floor_div_i128(2 * a + b, 2 * b); }

}  // namespace

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(floor_div_i128(a, b));
}

std::int64_t round_div_half_up(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(round_div_i128(a, b));
}

TimeInstant radio_time_of(const ClockModel& clock, TimeInstant true_time) {
  if (true_time.axis != Axis::global()) {
    throw Error("radio_time_of expects a true-time instant, got " + true_time.axis.name());
  }
  const i128 delta = static_cast<i128>(true_time.ticks) - clock.epoch_ns;
  const i128 scaled = delta + round_div_i128(delta * clock.drift_ppb, kPpbScale);
  const i128 out = static_cast<i128>(clock.offset_ns) + clock.epoch_ns + scaled;
  return TimeInstant::at(clock.axis, narrow_ticks(out, "radio_time_of"));
}

TimeInstant true_time_of(const ClockModel& clock, TimeInstant clock_time) {
  if (clock_time.axis != clock.axis) {
    throw Error("true_time_of: instant on " + clock_time.axis.name() + " but clock is " +
                clock.axis.name());
  }
  const i128 rate = static_cast<i128>(kPpbScale) + clock.drift_ppb;
  if (rate <= 0) throw Error("true_time_of: clock rate must be positive");
  const i128 v = static_cast<i128>(clock_time.ticks) - clock.offset_ns - clock.epoch_ns;
  const i128 delta = round_div_i128(v * kPpbScale, rate);
  const i128 out = delta + clock.epoch_ns;
  return TimeInstant::at(Axis::global(), narrow_ticks(out, "true_time_of"));
}

std::int64_t quantize_to_sample(const SampleCounter& counter, TimeInstant radio_time) {
  if (counter.sample_period_ns <= 0) throw Error("sample counter period must be positive");
  const Duration rel = radio_time - counter.init_time;  // axis-checked
  if (rel < 0) {
    throw Error("quantize_to_sample: instant precedes stream start on " +
                radio_time.axis.name());
  }
  return round_div_half_up(rel, counter.sample_period_ns);
}

TimeInstant sample_arrival_time(const SampleCounter& counter, std::int64_t sample_index) {
  if (counter.sample_period_ns <= 0) throw Error("sample counter period must be positive");
  const i128 t = static_cast<i128>(counter.init_time.ticks) +
                 static_cast<i128>(sample_index) * counter.sample_period_ns;
  return TimeInstant::at(counter.init_time.axis, narrow_ticks(t, "sample_arrival_time"));
}

}  // namespace slotsim
