#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmtrack/appearance.hpp"
#include "swarmtrack/config.hpp"
#include "swarmtrack/particles.hpp"
#include "swarmtrack/track.hpp"

namespace swarmtrack {

struct FitnessWeights {
  double sigma_h = 0.2;
  double sigma_p = 0.5;
  double sigma_i = 0.3;
  double lambda_s = 0.4;
  double lambda_m = 0.6;
  double xi_p = 0.7;
  double xi_v = 0.3;

  static FitnessWeights from(const TrackerConfig& cfg);
};

struct Neighbour {
  TrackId id = 0;
  BBox state;
  Velocity4 vel;
  TrackStatus status = TrackStatus::New;
};

struct SwarmResult {
  std::vector<Particle> particles;
  Particle gbest;
  double gbest_history_fitness = 0.0;
  std::vector<Neighbour> neighbours;
};

/// Tracks (other than `target`) whose center lies within
/// radius_scale * diag(target.state) of the target's center, ordered by id.
std::vector<Neighbour> neighbours(const Track& target, std::span<const Track> all_tracks, double radius_scale);

/// A box with an optional appearance descriptor.
struct Observation {
  BBox box;
  const FeatureVec* feature = nullptr;
};

/// lambda_s * cosine_sim + lambda_m * motion fitness, where the motion
/// fitness is 1 - min(dist, d_om) / d_om over centers. When either side has
/// no descriptor the appearance term is dropped (lambda_s = 0, lambda_m = 1).
double pair_fitness(const Observation& candidate, const Observation& reference, double d_om,
                    double lambda_s, double lambda_m);

/// Social fitness of a particle against its target's neighbours; 1 when
/// there are none. Larger means farther from neighbours in position and
/// velocity.
double social_fitness(const Particle& p, std::span<const Neighbour> nbrs, double eps_nei, double v_s_max,
                      const FitnessWeights& w);

/// PSO refinement of a target's particles. `frame` may be null (frameless).
/// Runs cfg.pso_iterations canonical PSO updates on the combined
/// history/exploration/social fitness.
SwarmResult optimize(const Track& target, std::vector<Particle> particles, const GrayImage* frame,
                     std::vector<Neighbour> nbrs, const TrackerConfig& cfg, const StreamKey& key);

}  // namespace swarmtrack
