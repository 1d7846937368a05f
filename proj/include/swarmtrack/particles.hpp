#pragma once

#include <cstdint>
#include <vector>

#include "swarmtrack/config.hpp"
#include "swarmtrack/track.hpp"

namespace swarmtrack {

/// Identifies the random stream family for one track in one frame.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t frame = 0;
  TrackId track = 0;
};

/// Draws cfg.particles particles from the random motion model
///   V = V_prev + eps_v * U_V
///   X = X_prev + lambda_v * V + lambda_x * eps_x * U_X
/// with uniform U_X, U_V bounded by the scale-adaptive limits of the
/// track's current box. V_prev is capped to V^max before perturbation.
/// Seeds from the track's optimal state or, when configured and available,
/// from its prior particles. Throws ConfigError when cfg.particles < 1.
std::vector<Particle> sample_particles(const Track& track, const TrackerConfig& cfg, const StreamKey& key);

/// Post-PSO resampling. Particles whose fitness is below rho_discard are
/// overwritten with jittered copies of `gbest` (replace mode) or dropped
/// (discard mode, never returning an empty set).
std::vector<Particle> resample(std::vector<Particle> particles, const Particle& gbest, const BBox& reference,
                               const TrackerConfig& cfg, const StreamKey& key);

}  // namespace swarmtrack
