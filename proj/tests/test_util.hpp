#pragma once

#include <utility>
#include <vector>

#include "swarmtrack/lifecycle.hpp"
#include "swarmtrack/mot_io.hpp"
#include "swarmtrack/scenario.hpp"
#include "swarmtrack/sort_baseline.hpp"
#include "swarmtrack/track.hpp"
#include "swarmtrack/tracker.hpp"

namespace testutil {

inline swarmtrack::Track make_track(swarmtrack::TrackId id, swarmtrack::BBox state, swarmtrack::Velocity4 vel = {},
                                    swarmtrack::TrackStatus status = swarmtrack::TrackStatus::Strong) {
  swarmtrack::Track t;
  t.id = id;
  t.state = state;
  t.vel = vel;
  t.status = status;
  t.history.push_back(state);
  t.gbest = {state, vel, 1.0};
  return t;
}

inline swarmtrack::TrackFile to_track_file(const swarmtrack::FrameTracks& frames, bool include_weak) {
  swarmtrack::TrackFile f;
  for (const auto& [frame, outs] : frames)
    for (const auto& o : outs)
      if (include_weak || o.status != swarmtrack::TrackStatus::Weak)
        f.records.push_back({frame, o.id, o.state, 1.0 - o.penalty});
  return f;
}

/// Runs the tracker over every frame of a scenario.
inline swarmtrack::FrameTracks run_tracker(const swarmtrack::Scenario& sc, const swarmtrack::TrackerConfig& cfg) {
  swarmtrack::Tracker tracker(cfg);
  swarmtrack::FrameTracks out;
  for (const auto& [frame, dets] : sc.detections) {
    const swarmtrack::GrayImage* img =
        sc.frames.empty() ? nullptr : &sc.frames[static_cast<std::size_t>(frame - 1)];
    out.emplace_back(frame, tracker.step({frame, dets, img}));
  }
  return out;
}

inline swarmtrack::FrameTracks run_sort(const swarmtrack::Scenario& sc) {
  swarmtrack::SortBaseline sort;
  swarmtrack::FrameTracks out;
  for (const auto& [frame, dets] : sc.detections) out.emplace_back(frame, sort.step(dets));
  return out;
}

}  // namespace testutil
