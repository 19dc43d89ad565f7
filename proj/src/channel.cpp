#include "slotsim/channel.hpp"

#include <algorithm>
#include <cmath>

#include "slotsim/error.hpp"

namespace slotsim {

Duration draw_link_delay(const LinkDelayModel& model, RngStream& rng) {
  Duration d = 0;
  switch (model.distribution) {
    case DelayDistribution::Constant:
      d = model.mean_ns;
      break;
    case DelayDistribution::ShiftedLognormal: {
      // Parameterized so mean/deviation of (floor + lognormal) match config.
      const double m = static_cast<double>(model.mean_ns - model.floor_ns);
      const double s = static_cast<double>(model.deviation_ns);
      if (m <= 0) throw ConfigError("link delay mean must exceed floor for shifted_lognormal");
      if (s <= 0) {
        d = model.mean_ns;
        break;
      }
      const double sigma2 = std::log(1.0 + (s * s) / (m * m));
      const double mu = std::log(m) - 0.5 * sigma2;
      const double draw = std::exp(mu + std::sqrt(sigma2) * rng.gaussian());
      d = model.floor_ns + static_cast<Duration>(std::llround(draw));
      break;
    }
    case DelayDistribution::TruncatedNormal: {
      const double draw = rng.gaussian(static_cast<double>(model.mean_ns),
                                       static_cast<double>(model.deviation_ns));
      d = static_cast<Duration>(std::llround(draw));
      break;
    }
  }
  d = std::max(d, model.floor_ns);
  if (model.cap_ns > 0) d = std::min(d, model.cap_ns);
  return d;
}

void PropagationModel::set_pair(NodeId a, NodeId b, Duration d) {
  delays[{std::min(a, b), std::max(a, b)}] = d;
}

Duration propagation_delay(const PropagationModel& model, NodeId a, NodeId b) {
  if (a == b) return 0;
  const auto it = model.delays.find({std::min(a, b), std::max(a, b)});
  if (it != model.delays.end()) return it->second;
  if (model.default_ns >= 0) return model.default_ns;
  throw ConfigError("no propagation delay configured for node pair " + std::to_string(a) + "," +
                    std::to_string(b));
}

DetectionOutcome detect_arrival(const DetectionModel& model, TimeInstant radio_arrival,
                                const SampleCounter& counter, RngStream& miss_rng,
                                RngStream& jitter_rng) {
  DetectionOutcome out;
  if (model.miss_probability > 0 && miss_rng.bernoulli(model.miss_probability)) {
    out.missed = true;
    return out;
  }
  TimeInstant jittered = radio_arrival;
  if (model.jitter_samples > 0) {
    const double j =
        jitter_rng.gaussian(0.0, model.jitter_samples * static_cast<double>(counter.sample_period_ns));
    jittered = jittered + static_cast<Duration>(std::llround(j));
  }
  out.sample_index = quantize_to_sample(counter, jittered);
  out.measured_arrival = sample_arrival_time(counter, out.sample_index);
  return out;
}

}  // namespace slotsim
