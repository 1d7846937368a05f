#pragma once

#include <deque>
#include <span>
#include <vector>

#include "swarmtrack/association.hpp"
#include "swarmtrack/config.hpp"
#include "swarmtrack/swarm.hpp"
#include "swarmtrack/track.hpp"

namespace swarmtrack {

/// Regression window of the trend-seed velocity.
struct SlopeWindow {
  int history = 10;  // H: number of most recent states used
  int frames = 5;    // F: largest index gap of a slope pair
  double tau_scale = 0.5;

  static SlopeWindow from(const TrackerConfig& cfg) { return {cfg.history, cfg.window, cfg.tau_scale}; }
};

/// Appends `state` to the history, keeping at most `capacity` entries.
void push_history(std::deque<BBox>& history, const BBox& state, int capacity);

/// Matched-track update. Large jumps (center distance >= gamma_o * diag)
/// are halved toward the detection; small ones snap to it. Resets penalty,
/// age and miss count.
Track update_strong(Track track, const Detection& det, const TrackerConfig& cfg);

Track create_track(const Detection& det, TrackId id, const TrackerConfig& cfg);

/// Penalty/age growth of an unmatched track:
///   delta = (1 - exp(-l^2 / (2 sigma^2))) * (1 - f + delta_e), sigma = age_max / 6
///   penalty += zeta * delta, age += zeta * delta * age_max
/// with zeta = sign(rho_re - f + delta_e) when a strong neighbour exists and
/// 1 otherwise. Both results are clamped. `track.misses` must already count
/// this frame.
Track penalty_age_update(Track track, double gbest_history_fitness, bool has_strong_neighbour, double delta_e,
                         const TrackerConfig& cfg);

/// Entrance penalty for a track centered at `b`.
double entrance_penalty(const BBox& b, const TrackerConfig& cfg);

/// Windowed median of pairwise slopes for each state component. Slopes
/// larger in magnitude than tau (tau_scale times the diagonal for centers,
/// times w or h for sizes, measured on the latest box) are ignored.
Velocity4 trend_velocity(const std::deque<BBox>& history, const SlopeWindow& win);

/// Outcome of a weak-track update.
enum class WeakBranch { Frozen, OwnVelocity, CoMoving, Avoidance };

struct WeakUpdate {
  Track track;
  WeakBranch branch = WeakBranch::Frozen;
  bool has_strong_neighbour = false;
};

/// Coasting update of an unmatched track from its swarm result and the
/// frame's tracks after strong updates. Strong neighbours (trusted) pull or
/// deflect the center; width and height are never changed.
WeakUpdate update_weak(const Track& track, const SwarmResult& swarm, std::span<const Track> tracks_now,
                       const TrackerConfig& cfg);

/// Keeps tracks with age < age_max.
std::vector<Track> prune(std::vector<Track> tracks, double age_max);

}  // namespace swarmtrack
