#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "slotsim/time.hpp"

namespace slotsim {

// Reproducibility contract: a (scenario, master seed) pair must yield
// bit-identical draw sequences on any build. std::mt19937_64 output is fully
// specified by the standard; the distribution transforms below are written
// out explicitly because the std distribution objects are not portable.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Standard normal via Marsaglia polar; no trig, one spare cached.
  double gaussian();

  double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Purposes a node draws for. Streams are derived per (node, purpose) and, for
// detection, per transmitting peer, so changing one node's activity never
// shifts another node's draws.
enum class StreamPurpose : std::uint64_t {
  LinkTx = 1,
  LinkRx = 2,
  DetectJitter = 3,
  DetectMiss = 4,
  ProbeTx = 5,
  ProbeRx = 6,
};

std::uint64_t splitmix64(std::uint64_t x);

// Stable seed derivation; order-sensitive in its arguments.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

RngStream make_stream(std::uint64_t master, NodeId node, StreamPurpose purpose, NodeId peer = 0);

// FNV-1a, used to fold sweep key/value strings into derived seeds.
std::uint64_t fnv1a64(const std::string& s);

}  // namespace slotsim
