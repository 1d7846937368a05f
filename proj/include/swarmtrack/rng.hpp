#pragma once

#include <cstdint>

namespace swarmtrack {

/// Counter-based random stream. Every stream is keyed by
/// (seed, frame, track id, particle index, purpose), so draws do not depend
/// on the order in which tracks or particles are processed.
class Rng {
 public:
  enum class Purpose : std::uint64_t { Sample = 1, Pso = 2, Resample = 3, Scenario = 4 };

  Rng(std::uint64_t seed, std::uint64_t frame, std::uint64_t track, std::uint64_t index, Purpose purpose);

  /// Next raw 64-bit value.
  std::uint64_t next();

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace swarmtrack
