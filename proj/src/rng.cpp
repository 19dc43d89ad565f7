#include "slotsim/rng.hpp"

#include <cmath>

namespace slotsim {

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (a * 0x9e3779b97f4a7c15ULL));
  s = splitmix64(s ^ (b * 0xc2b2ae3d27d4eb4fULL));
  s = splitmix64(s ^ (c * 0x165667b19e3779f9ULL));
  return s;
}

RngStream make_stream(std::uint64_t master, NodeId node, StreamPurpose purpose, NodeId peer) {
  const std::uint64_t pp = (static_cast<std::uint64_t>(purpose) << 32) | peer;
  return RngStream(derive_seed(master, node, pp));
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace slotsim
