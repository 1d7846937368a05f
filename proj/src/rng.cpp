#include "swarmtrack/rng.hpp"

namespace swarmtrack {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t frame, std::uint64_t track, std::uint64_t index, Purpose purpose) {
  std::uint64_t k = mix(seed);
  k = mix(k ^ frame);
  k = mix(k ^ track);
  k = mix(k ^ index);
  key_ = mix(k ^ static_cast<std::uint64_t>(purpose));
}

std::uint64_t Rng::next() { return mix(key_ ^ mix(++counter_)); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace swarmtrack
