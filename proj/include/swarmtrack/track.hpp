#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "swarmtrack/geometry.hpp"

namespace swarmtrack {

using TrackId = std::int64_t;

enum class TrackStatus { Strong, Weak, New };

const char* to_string(TrackStatus s);

/// One sampled hypothesis of a target's state and motion.
struct Particle {
  BBox state;
  Velocity4 vel;         // sampled motion velocity
  Velocity4 step;        // PSO displacement carried between iterations
  BBox pbest_state;
  double pbest_fitness = 0.0;
  double fitness = 0.0;
};

/// Post-PSO global best of a target's swarm.
struct GlobalBest {
  BBox state;
  Velocity4 vel;
  double history_fitness = 0.0;
};

struct Track {
  TrackId id = 0;
  BBox state;
  Velocity4 vel;           // trend-seed velocity for the next frame
  double penalty = 0.0;    // in [0, 1]
  double age = 0.0;        // in [0, age_max]
  TrackStatus status = TrackStatus::New;
  int misses = 0;          // consecutive unmatched frames
  std::deque<BBox> history;  // most recent states, oldest first
  std::vector<Particle> particles;
  GlobalBest gbest;
};

}  // namespace swarmtrack
