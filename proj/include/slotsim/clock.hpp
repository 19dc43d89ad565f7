#pragma once

#include <cstdint>

#include "slotsim/time.hpp"

namespace slotsim {

// Affine map from the global true timeline onto one device clock:
//
//   clock(t) = offset + (t - epoch) * (1 + drift_ppb * 1e-9) + epoch
//
// evaluated in exact integer arithmetic, rounded to the nearest nanosecond
// tick (ties toward +inf, matching the sample quantizer). Drift is stored in
// parts per billion so fractional ppm values stay exact (0.6 ppm == 600 ppb).
struct ClockModel {
  Axis axis;  // the axis this clock realizes (radio or host of some node)
  Duration offset_ns = 0;
  std::int64_t drift_ppb = 0;
  Duration epoch_ns = 0;
};

// Reading of `clock` at a global true time.
TimeInstant radio_time_of(const ClockModel& clock, TimeInstant true_time);

// Inverse map; round-trips with radio_time_of to within one tick.
TimeInstant true_time_of(const ClockModel& clock, TimeInstant clock_time);

// Free-running sample stream of one radio. Sample index l corresponds to
// radio time init_time + l * sample_period.
struct SampleCounter {
  TimeInstant init_time;          // radio axis, index 0
  Duration sample_period_ns = 0;  // > 0
};

// Nearest sample index for a radio-axis instant; ties round up (toward the
// later sample). radio_time must not precede the start of the stream.
std::int64_t quantize_to_sample(const SampleCounter& counter, TimeInstant radio_time);

// Radio-axis arrival instant of sample index l (init + l * period).
TimeInstant sample_arrival_time(const SampleCounter& counter, std::int64_t sample_index);

// floor(a / b) for b > 0, exact for negative a.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

// round(a / b) to nearest, ties toward +inf, for b > 0.
std::int64_t round_div_half_up(std::int64_t a, std::int64_t b);

}  // namespace slotsim
