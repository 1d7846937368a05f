#pragma once

#include <vector>

#include "swarmtrack/association.hpp"
#include "swarmtrack/tracker.hpp"

namespace swarmtrack {

/// SORT-style reference tracker: constant-velocity prediction from the last
/// two matched boxes and greedy IoU matching. Used as a comparison harness.
class SortBaseline {
 public:
  struct Options {
    double iou_min = 0.3;
    int max_age = 1;  // frames a track may go unmatched before removal
    double conf_min = 0.0;
  };

  SortBaseline() = default;
  explicit SortBaseline(Options opts) : opts_(opts) {}

  /// Matched tracks are reported Strong (or New on their first frame);
  /// coasting tracks are reported Weak.
  std::vector<TrackOutput> step(const std::vector<Detection>& dets);

 private:
  struct Entry {
    TrackId id;
    BBox box;
    Velocity4 vel;
    int misses = 0;
    bool fresh = true;
  };

  Options opts_;
  std::vector<Entry> tracks_;
  TrackId next_id_ = 1;
};

}  // namespace swarmtrack
