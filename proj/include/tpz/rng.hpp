#pragma once

#include <cmath>
#include <cstdint>

#include "tpz/types.hpp"

namespace tpz {

// Counter-based generator: every draw is a pure function of (seed, stream, i, j, slot).
namespace rng {

inline constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t i,
                                   std::uint64_t j, std::uint64_t slot = 0) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  h = mix(h ^ i);
  h = mix(h ^ j);
  return mix(h ^ slot);
}

// Uniform on the open interval (0, 1).
inline double uniform(std::uint64_t k) {
  return (static_cast<double>(k >> 11) + 0.5) * 0x1.0p-53;
}

inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j,
                       std::uint64_t slot = 0) {
  const double u1 = uniform(key(seed, stream, i, j, 2 * slot));
  const double u2 = uniform(key(seed, stream, i, j, 2 * slot + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
  return key(seed, tag, index, 0x5eedULL);
}

}  // namespace rng

// Stream tags keep independent components of one experiment on disjoint streams.
enum class Stream : std::uint64_t {
  noise = 1,
  lattice = 2,
  gaussian_field = 3,
  conditioning = 4,
  trial = 5,
  scalar_w = 6,
  graph = 7,
  permutation = 8,
};

inline std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

// Sequential stream of standard normals keyed by (seed, stream); index advances per draw.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, Stream stream) : seed_(seed), stream_(tag(stream)) {}
  double next() { return rng::gaussian(seed_, stream_, counter_++, 0); }
  double uniform() { return rng::uniform(rng::key(seed_, stream_, counter_++, 1)); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace tpz
