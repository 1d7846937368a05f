#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "swarmtrack/appearance.hpp"
#include "swarmtrack/association.hpp"
#include "swarmtrack/config.hpp"
#include "swarmtrack/track.hpp"

namespace swarmtrack {

struct FrameInput {
  long frame_index = 0;
  std::vector<Detection> detections;
  const GrayImage* image = nullptr;  // null runs the frame without appearance
};

struct TrackOutput {
  TrackId id = 0;
  BBox state;
  TrackStatus status = TrackStatus::New;
  double penalty = 0.0;
  double age = 0.0;
};

/// Thrown by Tracker::step for out-of-order frames and malformed detections.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Online multi-object tracker. One frame per step(); frames must arrive
/// with strictly increasing indices. Output is a function of the config,
/// its seed and the input sequence only.
class Tracker {
 public:
  /// Throws ConfigError listing every violated constraint.
  explicit Tracker(TrackerConfig cfg);

  std::vector<TrackOutput> step(const FrameInput& input);

  void reset();

  const TrackerConfig& config() const { return cfg_; }
  const std::vector<Track>& tracks() const { return tracks_; }

 private:
  TrackerConfig cfg_;
  std::vector<Track> tracks_;
  TrackId next_id_ = 1;
  std::optional<long> last_frame_;
};

}  // namespace swarmtrack
